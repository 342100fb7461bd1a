"""Loading and validating the five record files plus the run configuration."""

from __future__ import annotations

import csv
import dataclasses
import json
import logging
import os
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import (
    DuplicateKey,
    MissingFile,
    ParseError,
    RangeError,
    ReferentialError,
)

log = logging.getLogger(__name__)

WEIGHT_MODES = ("ranking", "value")

HEADERS = {
    "players.csv": ["player_id", "name", "birth_year"],
    "clubs.csv": ["club_id", "name", "league_id", "avg_ranking", "avg_value"],
    "leagues.csv": ["league_id", "name", "ranking"],
    "affiliations.csv": ["player_id", "club_id", "season", "market_value"],
    "transfers.csv": ["player_id", "from_club_id", "to_club_id", "season"],
}


@dataclass(frozen=True)
class PlayerRecord:
    player_id: str
    name: str
    birth_year: int


@dataclass(frozen=True)
class AffiliationRecord:
    player_id: str
    club_id: str
    season: int
    market_value: int  # pounds, 0 = unknown


@dataclass(frozen=True)
class ClubRecord:
    club_id: str
    name: str
    league_id: str
    avg_ranking: Optional[float]  # None when the field is blank
    avg_value: Optional[int]


@dataclass(frozen=True)
class LeagueRecord:
    league_id: str
    name: str
    ranking: int


@dataclass(frozen=True)
class TransferRecord:
    player_id: str
    from_club_id: str
    to_club_id: str
    season: int


@dataclass(frozen=True)
class AnalysisConfig:
    theta: float = 0.02
    reference_season: int = 2016
    damping: float = 0.85
    pr_tolerance: float = 1e-9
    pr_max_iter: int = 200
    weight_mode: str = "ranking"
    normalize_betweenness: bool = True
    first_season: int = 2001

    def __post_init__(self):
        check_config(self)

    def replace(self, **changes) -> "AnalysisConfig":
        return dataclasses.replace(self, **changes)

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True) + "\n"


def check_config(cfg: AnalysisConfig) -> None:
    def is_real(x):
        return isinstance(x, (int, float)) and not isinstance(x, bool)

    def is_int(x):
        return isinstance(x, int) and not isinstance(x, bool)

    if not is_real(cfg.theta) or cfg.theta < 0:
        raise RangeError("theta", cfg.theta)
    if not is_int(cfg.reference_season):
        raise RangeError("reference_season", cfg.reference_season)
    if not is_int(cfg.first_season) or cfg.first_season > cfg.reference_season:
        raise RangeError("first_season", cfg.first_season)
    if not is_real(cfg.damping) or not 0 < cfg.damping < 1:
        raise RangeError("damping", cfg.damping)
    if not is_real(cfg.pr_tolerance) or not cfg.pr_tolerance > 0:
        raise RangeError("pr_tolerance", cfg.pr_tolerance)
    if not is_int(cfg.pr_max_iter) or cfg.pr_max_iter < 1:
        raise RangeError("pr_max_iter", cfg.pr_max_iter)
    if cfg.weight_mode not in WEIGHT_MODES:
        raise RangeError("weight_mode", cfg.weight_mode)
    if not isinstance(cfg.normalize_betweenness, bool):
        raise RangeError("normalize_betweenness", cfg.normalize_betweenness)


CONFIG_KEYS = tuple(f.name for f in dataclasses.fields(AnalysisConfig))


def load_config(path=None) -> AnalysisConfig:
    """Read a JSON config; absent file or missing keys fall back to defaults."""
    if path is None:
        return AnalysisConfig()
    path = Path(path)
    if not path.exists():
        log.warning("config file %s not found, using defaults", path)
        return AnalysisConfig()
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(str(path), getattr(exc, "lineno", 0), str(exc)) from None
    if not isinstance(raw, dict):
        raise ParseError(str(path), 1, "config must be a JSON object")
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise ParseError(str(path), 1, f"unknown config key(s): {', '.join(unknown)}")
    return AnalysisConfig(**raw)


def save_config(cfg: AnalysisConfig, path) -> None:
    Path(path).write_text(cfg.to_json(), encoding="utf-8")


@dataclass(frozen=True)
class Dataset:
    players: dict[str, PlayerRecord]
    clubs: dict[str, ClubRecord]
    leagues: dict[str, LeagueRecord]
    affiliations: tuple[AffiliationRecord, ...]
    transfers: tuple[TransferRecord, ...]
    dropped_self_transfers: int = 0
    # transfer row count as read, before self-transfers were dropped
    transfer_rows: int = 0


# --- parsing helpers --------------------------------------------------------

_SPLIT_SEASON = re.compile(r"^(\d{4})\s*/\s*\d{2,4}$")


def parse_season(text: str) -> int:
    """Season as its starting calendar year; '2015/16' -> 2015."""
    text = text.strip()
    m = _SPLIT_SEASON.match(text)
    if m:
        return int(m.group(1))
    return int(text)


def _read_rows(path: Path):
    name = path.name
    if not path.is_file():
        raise MissingFile(name)
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(name, 1, "empty file") from None
        except UnicodeDecodeError as exc:
            raise ParseError(name, 1, f"not UTF-8: {exc}") from None
        if header != HEADERS[name]:
            raise ParseError(name, 1, f"expected header {','.join(HEADERS[name])}")
        width = len(header)
        try:
            for row in reader:
                line = reader.line_num
                if not row or (len(row) == 1 and not row[0].strip()):
                    continue
                if len(row) != width:
                    raise ParseError(name, line, f"expected {width} fields, got {len(row)}")
                yield line, row
        except UnicodeDecodeError as exc:
            raise ParseError(name, reader.line_num + 1, f"not UTF-8: {exc}") from None
        except csv.Error as exc:
            raise ParseError(name, reader.line_num, str(exc)) from None


def _field(name, line, what, value, conv):
    try:
        return conv(value)
    except (ValueError, TypeError):
        raise ParseError(name, line, f"bad {what}: {value!r}") from None


def _ident(name, line, what, value):
    value = value.strip()
    if not value:
        raise ParseError(name, line, f"empty {what}")
    return value


def _opt(conv):
    def inner(text):
        text = text.strip()
        return None if text == "" else conv(text)

    return inner


def read_leagues(path) -> dict[str, LeagueRecord]:
    path = Path(path)
    out = {}
    for line, (lid, lname, ranking) in _read_rows(path):
        lid = _ident(path.name, line, "league_id", lid)
        rank = _field(path.name, line, "ranking", ranking, int)
        if rank < 1:
            raise ParseError(path.name, line, f"ranking must be >= 1, got {rank}")
        if lid in out:
            raise DuplicateKey(path.name, line, lid)
        out[lid] = LeagueRecord(lid, lname, rank)
    return out


def default_leagues() -> dict[str, LeagueRecord]:
    """The predefined league rankings shipped with the package."""
    with resources.as_file(resources.files("footnet") / "data" / "leagues.csv") as p:
        return read_leagues(p)


def load_dataset(data_dir) -> Dataset:
    data_dir = Path(data_dir)
    for fname in HEADERS:
        if not (data_dir / fname).is_file():
            raise MissingFile(fname)

    leagues = read_leagues(data_dir / "leagues.csv")

    clubs: dict[str, ClubRecord] = {}
    fname = "clubs.csv"
    for line, (cid, cname, lid, avg_ranking, avg_value) in _read_rows(data_dir / fname):
        cid = _ident(fname, line, "club_id", cid)
        lid = _ident(fname, line, "league_id", lid)
        rk = _field(fname, line, "avg_ranking", avg_ranking, _opt(float))
        val = _field(fname, line, "avg_value", avg_value, _opt(int))
        if rk is not None and not rk >= 1:
            raise ParseError(fname, line, f"avg_ranking must be >= 1, got {rk}")
        if val is not None and val < 0:
            raise ParseError(fname, line, f"avg_value must be >= 0, got {val}")
        if lid not in leagues:
            raise ReferentialError(fname, line, lid)
        if cid in clubs:
            raise DuplicateKey(fname, line, cid)
        clubs[cid] = ClubRecord(cid, cname, lid, rk, val)

    players: dict[str, PlayerRecord] = {}
    fname = "players.csv"
    for line, (pid, pname, birth) in _read_rows(data_dir / fname):
        pid = _ident(fname, line, "player_id", pid)
        year = _field(fname, line, "birth_year", birth, int)
        if year < 1900:
            raise ParseError(fname, line, f"birth_year before 1900: {year}")
        if pid in players:
            raise DuplicateKey(fname, line, pid)
        players[pid] = PlayerRecord(pid, pname, year)

    affiliations = []
    seen = set()
    fname = "affiliations.csv"
    for line, (pid, cid, season, value) in _read_rows(data_dir / fname):
        pid = _ident(fname, line, "player_id", pid)
        cid = _ident(fname, line, "club_id", cid)
        s = _field(fname, line, "season", season, parse_season)
        v = _field(fname, line, "market_value", value, int)
        if v < 0:
            raise ParseError(fname, line, f"market_value must be >= 0, got {v}")
        if pid not in players:
            raise ReferentialError(fname, line, pid)
        if cid not in clubs:
            raise ReferentialError(fname, line, cid)
        key = (pid, cid, s)
        if key in seen:
            raise DuplicateKey(fname, line, key)
        seen.add(key)
        affiliations.append(AffiliationRecord(pid, cid, s, v))

    transfers = []
    dropped = 0
    rows = 0
    fname = "transfers.csv"
    for line, (pid, src, dst, season) in _read_rows(data_dir / fname):
        rows += 1
        pid = _ident(fname, line, "player_id", pid)
        src = _ident(fname, line, "from_club_id", src)
        dst = _ident(fname, line, "to_club_id", dst)
        s = _field(fname, line, "season", season, parse_season)
        if pid not in players:
            raise ReferentialError(fname, line, pid)
        for key in (src, dst):
            if key not in clubs:
                raise ReferentialError(fname, line, key)
        if src == dst:
            dropped += 1
            continue
        transfers.append(TransferRecord(pid, src, dst, s))
    if dropped:
        log.warning("dropped %d self-transfer row(s) from transfers.csv", dropped)

    return Dataset(
        players=players,
        clubs=clubs,
        leagues=leagues,
        affiliations=tuple(affiliations),
        transfers=tuple(transfers),
        dropped_self_transfers=dropped,
        transfer_rows=rows,
    )


# --- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Finding:
    kind: str
    subject: str
    detail: str

    def __str__(self):
        return f"{self.kind}\t{self.subject}\t{self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = field(default_factory=tuple)

    def __bool__(self):
        return bool(self.findings)

    def __len__(self):
        return len(self.findings)

    def by_kind(self, kind):
        return [f for f in self.findings if f.kind == kind]


def validate_dataset(dataset: Dataset, config: AnalysisConfig) -> ValidationReport:
    """List everything that keeps the dataset from being analysis-ready.

    Never raises and never mutates ``dataset``. An empty report means the
    network builders will run cleanly under ``config``.
    """
    findings = []

    affiliated = {a.player_id for a in dataset.affiliations}
    for pid in sorted(dataset.players):
        if pid not in affiliated:
            findings.append(Finding("no_affiliations", pid, "player has no affiliation rows"))
        by = dataset.players[pid].birth_year
        if by > config.reference_season:
            findings.append(
                Finding("birth_year_range", pid, f"birth_year {by} after reference season {config.reference_season}")
            )

    lo, hi = config.first_season, config.reference_season
    for a in dataset.affiliations:
        if not lo <= a.season <= hi:
            findings.append(
                Finding("season_range", f"{a.player_id}@{a.club_id}/{a.season}", f"season outside [{lo}, {hi}]")
            )

    for cid in sorted(dataset.clubs):
        club = dataset.clubs[cid]
        if config.weight_mode == "ranking" and club.avg_ranking is None:
            findings.append(Finding("club_importance", cid, "avg_ranking missing (weight_mode=ranking)"))
        if config.weight_mode == "value" and not club.avg_value:
            findings.append(Finding("club_importance", cid, "avg_value missing or zero (weight_mode=value)"))

    dup = Counter((t.player_id, t.from_club_id, t.to_club_id, t.season) for t in dataset.transfers)
    for key in sorted(k for k, c in dup.items() if c > 1):
        findings.append(Finding("duplicate_transfer", "/".join(map(str, key)), f"{dup[key]} identical rows"))

    return ValidationReport(tuple(findings))


def resolve_config_path(cli_value=None):
    """--config wins, then $FOOTNET_CONFIG, else None (defaults)."""
    if cli_value:
        return cli_value
    return os.environ.get("FOOTNET_CONFIG") or None


def rosters(dataset: Dataset):
    """(club_id, season) -> sorted list of (player_id, market_value)."""
    out = defaultdict(list)
    for a in dataset.affiliations:
        out[(a.club_id, a.season)].append((a.player_id, a.market_value))
    for v in out.values():
        v.sort()
    return dict(out)
