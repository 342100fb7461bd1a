"""``footnet`` command line: validate, stats, degree-dist, pagerank, betweenness, gen."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis, centrality, netbuild
from .errors import FootnetError, IoError, UnknownName, ValidationFailed
from .ingest import HEADERS, load_config, load_dataset, resolve_config_path, validate_dataset
from .synth import SyntheticSpec, gen_synthetic

log = logging.getLogger("footnet")

# birth years whose cohorts are reported by default with --cohorts
DEFAULT_COHORT_YEARS = tuple(range(1992, 2000))

EXIT_OK, EXIT_FINDINGS, EXIT_USAGE, EXIT_DATA, EXIT_NOT_CONVERGED = 0, 1, 2, 3, 4


@dataclass
class CommandOutcome:
    exit_code: int = EXIT_OK
    report_paths: list = field(default_factory=list)


def _clean(text):
    return str(text).replace("\t", " ").replace("\r", " ").replace("\n", " ")


def _emit(text, out=None) -> list:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return []
    try:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(out, exc.strerror or str(exc)) from None
    return [str(out)]


def format_ranking(scores, names, top_n=None) -> str:
    lines = ["rank\tnode_id\tname\tscore"]
    for rank, (node, score) in enumerate(scores.top(top_n).entries, 1):
        if node not in names:
            raise UnknownName(node)
        lines.append(f"{rank}\t{node}\t{_clean(names[node])}\t{score:.6f}")
    return "\n".join(lines) + "\n"


def write_ranking_table(scores, names, top_n=None, out=None) -> CommandOutcome:
    return CommandOutcome(EXIT_OK, _emit(format_ranking(scores, names, top_n), out))


def format_cohorts(cohorts, names, top_n=None) -> str:
    lines = ["birth_year\trank\tnode_id\tname\tscore"]
    for year, members in cohorts.items():
        for rank, (node, score) in enumerate(members[:top_n], 1):
            lines.append(f"{year}\t{rank}\t{node}\t{_clean(names[node])}\t{score:.6f}")
    return "\n".join(lines) + "\n"


def format_stats(stats) -> str:
    lines = ["property\tvalue"]
    for label, value in stats.rows():
        lines.append(f"{label}\t{value}" if isinstance(value, int) else f"{label}\t{value:.6f}")
    return "\n".join(lines) + "\n"


def format_histogram(hist) -> str:
    return "degree,count\n" + "".join(f"{k},{c}\n" for k, c in hist)


# --- argument grammar -------------------------------------------------------


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _year_list(text):
    try:
        return [int(y) for y in text.split(",") if y.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated years, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="footnet", description="Football collaboration and transfer network analytics.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def data_cmd(name, help, config=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--data-dir", required=True, type=Path)
        if config:
            sp.add_argument("--config", type=Path, help="JSON config (falls back to $FOOTNET_CONFIG)")
        return sp

    sp = data_cmd("validate", "check a data directory for analysis readiness")
    sp.add_argument("--strict", action="store_true", help="exit 1 when there are findings")

    sp = data_cmd("stats", "network property table")
    sp.add_argument("--network", required=True, choices=["player", "club"])
    sp.add_argument("--out", type=Path)

    sp = data_cmd("degree-dist", "degree histogram as CSV", config=False)
    sp.add_argument("--network", required=True, choices=["player", "club"])
    sp.add_argument("--out", type=Path)

    sp = data_cmd("pagerank", "weighted PageRank of the player network")
    sp.add_argument("--top", type=_positive_int)
    sp.add_argument("--cohorts", action="store_true", help="rank within birth-year cohorts")
    sp.add_argument("--years", type=_year_list, help="cohort years, e.g. 1998,1999 (implies --cohorts)")
    sp.add_argument("--out", type=Path)
    sp.add_argument("--threads", type=_positive_int)

    sp = data_cmd("betweenness", "weighted betweenness of the club network")
    sp.add_argument("--weight", required=True, choices=["ranking", "value"])
    sp.add_argument("--top", type=_positive_int)
    sp.add_argument("--no-normalize", action="store_true")
    sp.add_argument("--out", type=Path)
    sp.add_argument("--threads", type=_positive_int)

    sp = data_cmd("dump-graph", "write a network as sorted JSON")
    sp.add_argument("--network", required=True, choices=["player", "club"])
    sp.add_argument("--out", type=Path)

    sp = sub.add_parser("gen", help="write a seeded synthetic dataset")
    sp.add_argument("--seed", required=True, type=int)
    sp.add_argument("--players", required=True, type=_positive_int)
    sp.add_argument("--clubs", required=True, type=_positive_int)
    sp.add_argument("--leagues", required=True, type=_positive_int)
    sp.add_argument("--seasons", required=True, type=_positive_int)
    sp.add_argument("--transfers-per-season", required=True, type=_positive_int)
    sp.add_argument("--value-scale", type=_positive_int, default=1_000_000)
    sp.add_argument("--out-dir", required=True, type=Path)
    return p


# --- subcommands ------------------------------------------------------------


def _config(args):
    return load_config(resolve_config_path(getattr(args, "config", None)))


def _network(args, config):
    dataset = load_dataset(args.data_dir)
    if args.network == "player":
        return netbuild.build_player_network(dataset, config)
    return netbuild.build_club_network(dataset, config)


def cmd_validate(args):
    config = _config(args)
    dataset = load_dataset(args.data_dir)
    report = validate_dataset(dataset, config)
    for finding in report.findings:
        print(finding)
    print(f"{len(report)} finding(s)", file=sys.stderr)
    if report and args.strict:
        raise ValidationFailed(len(report))
    return CommandOutcome()


def cmd_stats(args):
    graph = _network(args, _config(args))
    return CommandOutcome(EXIT_OK, _emit(format_stats(analysis.network_stats(graph)), args.out))


def cmd_degree_dist(args):
    graph = _network(args, _config(args))
    return CommandOutcome(EXIT_OK, _emit(format_histogram(analysis.degree_histogram(graph)), args.out))


def cmd_dump_graph(args):
    graph = _network(args, _config(args))
    return CommandOutcome(EXIT_OK, _emit(json.dumps(netbuild.graph_to_json(graph)) + "\n", args.out))


def cmd_pagerank(args):
    config = _config(args)
    dataset = load_dataset(args.data_dir)
    graph = netbuild.build_player_network(dataset, config)
    scores = centrality.pagerank_weighted(graph, config)
    if not scores.meta.get("converged", True):
        log.warning("PageRank stopped at max_iter with residual %.3e", scores.meta["residual"])
    names = {pid: rec.name for pid, rec in dataset.players.items()}
    if args.cohorts or args.years:
        years = args.years or DEFAULT_COHORT_YEARS
        cohorts = analysis.cohort_rankings(scores, dataset.players, years)
        return CommandOutcome(EXIT_OK, _emit(format_cohorts(cohorts, names, args.top), args.out))
    return write_ranking_table(scores, names, args.top, args.out)


def cmd_betweenness(args):
    config = _config(args).replace(weight_mode=args.weight)
    if args.no_normalize:
        config = config.replace(normalize_betweenness=False)
    dataset = load_dataset(args.data_dir)
    graph = netbuild.build_club_network(dataset, config)
    threads = args.threads or os.cpu_count() or 1
    scores = centrality.betweenness_weighted(graph, config, threads=threads)
    names = {cid: rec.name for cid, rec in dataset.clubs.items()}
    return write_ranking_table(scores, names, args.top, args.out)


def cmd_gen(args):
    try:
        spec = SyntheticSpec(
            seed=args.seed,
            n_players=args.players,
            n_clubs=args.clubs,
            n_leagues=args.leagues,
            n_seasons=args.seasons,
            transfers_per_season=args.transfers_per_season,
            value_scale=args.value_scale,
        )
    except ValueError as exc:
        print(f"footnet gen: error: {exc}", file=sys.stderr)
        return CommandOutcome(EXIT_USAGE)
    ds = gen_synthetic(spec, args.out_dir)
    print(
        f"wrote {len(ds.players)} players, {len(ds.clubs)} clubs, "
        f"{len(ds.affiliations)} affiliations, {len(ds.transfers)} transfers to {args.out_dir}",
        file=sys.stderr,
    )
    return CommandOutcome(EXIT_OK, [str(args.out_dir / name) for name in sorted(HEADERS)])


COMMANDS = {
    "validate": cmd_validate,
    "stats": cmd_stats,
    "degree-dist": cmd_degree_dist,
    "dump-graph": cmd_dump_graph,
    "pagerank": cmd_pagerank,
    "betweenness": cmd_betweenness,
    "gen": cmd_gen,
}


def run(argv) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return CommandOutcome(EXIT_OK if exc.code == 0 else EXIT_USAGE)
    try:
        return COMMANDS[args.command](args)
    except FootnetError as exc:
        print(f"footnet {args.command}: error: {exc}", file=sys.stderr)
        return CommandOutcome(exc.exit_code)


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run(sys.argv[1:] if argv is None else argv).exit_code)


if __name__ == "__main__":
    main()
