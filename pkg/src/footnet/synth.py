"""Seeded synthetic league/club/player datasets in the on-disk CSV layout.

The generator walks season by season: players have one contiguous career
window, newcomers join a random club, and each season a fixed number of
continuing players move to a club drawn in proportion to club strength.
Market values are lognormal per player, shaped by an age curve.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import IoError
from .ingest import HEADERS, Dataset, default_leagues, load_dataset

UNKNOWN_VALUE_RATE = 0.03
MAX_CAREER = 15


@dataclass(frozen=True)
class SyntheticSpec:
    seed: int
    n_players: int
    n_clubs: int
    n_leagues: int
    n_seasons: int
    transfers_per_season: int
    value_scale: int = 1_000_000
    last_season: int = 2016

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        for name in ("n_players", "n_clubs", "n_leagues", "n_seasons", "transfers_per_season", "value_scale"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.n_clubs < self.n_leagues:
            raise ValueError("n_clubs must be >= n_leagues")

    @property
    def first_season(self):
        return self.last_season - self.n_seasons + 1


def _leagues(spec, rng):
    table = sorted(default_leagues().values(), key=lambda l: (-l.ranking, l.league_id))
    out = [(l.league_id, l.name, l.ranking) for l in table[: spec.n_leagues]]
    for i in range(len(out), spec.n_leagues):
        out.append((f"L{i + 1:02d}", f"League {i + 1}", int(rng.integers(1, 6))))
    return out


def generate(spec: SyntheticSpec) -> dict[str, list[tuple]]:
    """Build the five tables in memory, keyed by file name."""
    rng = np.random.default_rng(spec.seed)
    first, last = spec.first_season, spec.last_season
    n_p, n_c = spec.n_players, spec.n_clubs

    leagues = _leagues(spec, rng)
    club_league = np.arange(n_c) % spec.n_leagues
    league_rank = np.array([r for _, _, r in leagues], dtype=float)
    strength = rng.lognormal(0.0, 0.6, n_c) * (league_rank[club_league] / 100 + 0.1)
    pull = strength / strength.sum()

    length = rng.integers(1, MAX_CAREER + 1, n_p)
    start = first - length + 1 + (rng.random(n_p) * (last - first + length)).astype(np.int64)
    active_from = np.maximum(start, first)
    active_to = np.minimum(start + length - 1, last)
    birth = start - rng.integers(18, 36, n_p)
    base_value = rng.lognormal(0.0, 1.2, n_p)

    player_ids = [f"P{i:06d}" for i in range(n_p)]
    club_ids = [f"C{i:04d}" for i in range(n_c)]

    club_of = np.full(n_p, -1, dtype=np.int64)
    affiliations = []
    transfers = []
    roster_value = np.zeros((spec.n_seasons, n_c))
    for k, season in enumerate(range(first, last + 1)):
        active = (active_from <= season) & (season <= active_to)
        club_of[~active] = -1
        newcomers = np.flatnonzero(active & (club_of < 0))
        club_of[newcomers] = rng.integers(0, n_c, len(newcomers))

        continuing = np.flatnonzero(active & (active_from < season))
        if n_c > 1 and len(continuing):
            movers = np.sort(rng.choice(continuing, min(spec.transfers_per_season, len(continuing)), replace=False))
            dest = rng.choice(n_c, len(movers), p=pull)
            clash = dest == club_of[movers]
            dest[clash] = (dest[clash] + 1 + rng.integers(0, n_c - 1, int(clash.sum()))) % n_c
            for p, d in zip(movers.tolist(), dest.tolist()):
                transfers.append((player_ids[p], club_ids[club_of[p]], club_ids[d], season))
            club_of[movers] = dest

        members = np.flatnonzero(active)
        age = season - birth[members]
        shape = np.exp(-(((age - 27) / 6.0) ** 2))
        values = np.rint(base_value[members] * shape * spec.value_scale).astype(np.int64)
        values[rng.random(len(members)) < UNKNOWN_VALUE_RATE] = 0
        np.add.at(roster_value[k], club_of[members], values)
        for p, c, v in zip(members.tolist(), club_of[members].tolist(), values.tolist()):
            affiliations.append((player_ids[p], club_ids[c], season, v))

    clubs = []
    avg_value = np.rint(roster_value.mean(axis=0)).astype(np.int64)
    for li in range(spec.n_leagues):
        in_league = np.flatnonzero(club_league == li)
        by_strength = in_league[np.argsort(-strength[in_league], kind="stable")]
        jitter = rng.random(len(by_strength)) * 0.99
        for pos, c in enumerate(by_strength.tolist()):
            value = max(int(avg_value[c]), 1)
            clubs.append((club_ids[c], f"Club {c}", leagues[li][0], f"{pos + 1 + jitter[pos]:.2f}", value))
    clubs.sort()

    players = [(player_ids[i], f"Player {i}", int(birth[i])) for i in range(n_p)]
    return {
        "players.csv": players,
        "clubs.csv": clubs,
        "leagues.csv": leagues,
        "affiliations.csv": affiliations,
        "transfers.csv": transfers,
    }


def write_tables(tables, out_dir) -> None:
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, rows in tables.items():
            with (out_dir / name).open("w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(HEADERS[name])
                w.writerows(rows)
    except OSError as exc:
        raise IoError(out_dir, exc.strerror or str(exc)) from None


def gen_synthetic(spec: SyntheticSpec, out_dir) -> Dataset:
    write_tables(generate(spec), out_dir)
    return load_dataset(out_dir)
