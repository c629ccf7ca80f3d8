"""Command-line surface.

Exit codes: 0 on success, 1 on a verified negative result (invalid
decomposition, failed extraction, violated bound, failed precondition),
2 on usage or parse errors.  Vertex and node ids are 1-based in all file
formats and in the JSON output; --json switches the human-readable text
to JSON-lines records with stable field names.
"""

from __future__ import annotations

import json
import sys

import click

from .decomposition import (
    alpha_of_decomposition,
    mu_of_decomposition,
    validate as validate_td,
)
from .experiments import kst_exhaustive_check, run_lower_bound_trial
from .extraction import (
    compute_thresholds,
    extract_independent_sets,
    extract_induced_matching,
)
from .fileio import (
    FileFormatError,
    parse_graph_file,
    parse_matching_file,
    parse_sets_file,
    parse_td_file,
    td_to_text,
    write_td_file,
)
from .graph import GraphError, LimitExceededError
from .solvers import solve_measure
from .transform import (
    PreconditionViolation,
    build_transformed_decomposition,
    make_transform_state,
    run_certified_pipeline,
)


def _fail_usage(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _load(loader, *args):
    try:
        return loader(*args)
    except (FileFormatError, GraphError, LimitExceededError, OSError) as exc:
        _fail_usage(str(exc))


def _vertices(vs) -> list:
    return sorted(v + 1 for v in vs)


def _edges(edges) -> list:
    return sorted([min(u, v) + 1, max(u, v) + 1] for u, v in edges)


def _emit(record: dict, as_json: bool, text_lines) -> None:
    if as_json:
        click.echo(json.dumps(record, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


@click.group()
def main():
    """Tree decompositions, bag measures, and extremal-bound experiments."""


_graph_opt = click.option(
    "--graph", "graph_path", required=True, type=click.Path(dir_okay=False), help=".gr graph file"
)
_td_opt = click.option(
    "--td", "td_path", required=True, type=click.Path(dir_okay=False), help=".td decomposition file"
)
_json_opt = click.option("--json", "as_json", is_flag=True, help="emit JSON-lines records")


@main.command()
@_graph_opt
@_td_opt
@_json_opt
def validate(graph_path, td_path, as_json):
    """Check a decomposition against a graph."""
    g = _load(parse_graph_file, graph_path)
    td = _load(parse_td_file, td_path, g)
    report = validate_td(g, td)
    record = {
        "ok": report.ok,
        "failure": report.failure,
        "witness": _witness_json(report.witness),
    }
    _emit(
        record,
        as_json,
        ["ok"] if report.ok else [f"violation: {report.failure} witness={report.witness}"],
    )
    sys.exit(0 if report.ok else 1)


def _witness_json(witness):
    if witness is None:
        return None
    if isinstance(witness, frozenset):
        return _vertices(witness)
    if isinstance(witness, tuple):
        return [x + 1 if isinstance(x, int) else str(x) for x in witness]
    if isinstance(witness, int):
        return witness + 1
    return str(witness)


@main.command()
@_graph_opt
@_td_opt
@click.option(
    "--param",
    type=click.Choice(["alpha", "mu", "both"]),
    default="both",
    show_default=True,
    help="which bag measure to report",
)
@_json_opt
def measure(graph_path, td_path, param, as_json):
    """Report bag measures of a decomposition (validates it first)."""
    g = _load(parse_graph_file, graph_path)
    td = _load(parse_td_file, td_path, g)
    report = validate_td(g, td)
    if not report.ok:
        _emit(
            {"ok": False, "failure": report.failure, "witness": _witness_json(report.witness)},
            as_json,
            [f"violation: {report.failure} witness={report.witness}"],
        )
        sys.exit(1)
    for name in ("alpha", "mu") if param == "both" else (param,):
        rep = (alpha_of_decomposition if name == "alpha" else mu_of_decomposition)(g, td)
        witness = (
            _vertices(rep.witness_set)
            if name == "alpha"
            else _edges(rep.witness_set)
        )
        record = {
            "measure": name,
            "value": rep.value,
            "node": None if rep.witness_node is None else rep.witness_node + 1,
            "witness": witness,
        }
        _emit(record, as_json, [f"{name}={rep.value} node={record['node']} witness={witness}"])


@main.command()
@_graph_opt
@click.option(
    "--param",
    type=click.Choice(["treealpha", "mutw"]),
    required=True,
    help="which width parameter to minimize",
)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="write witness .td here")
@click.option("--limit", type=int, default=11, show_default=True, help="size cap for the solver")
@_json_opt
def solve(graph_path, param, out_path, limit, as_json):
    """Exactly solve a width parameter and emit the witness decomposition."""
    g = _load(parse_graph_file, graph_path)
    measure_name = "alpha" if param == "treealpha" else "mu"
    try:
        result = solve_measure(g, measure_name, limit=limit)
    except LimitExceededError as exc:
        _fail_usage(str(exc))
    text = td_to_text(result.witness, g.n)
    if out_path:
        write_td_file(out_path, result.witness, g.n)
    record = {
        "param": param,
        "value": result.value,
        "ordering": [v + 1 for v in result.ordering],
        "explored": result.explored,
        "td": text,
    }
    if as_json:
        click.echo(json.dumps(record, sort_keys=True))
    else:
        if not out_path:
            click.echo(text, nl=False)
        click.echo(f"value={result.value}")


@main.command()
@click.option("--s", "s", required=True, type=int)
@click.option("--t", "t", required=True, type=int)
@click.option("--m", "m", required=True, type=int)
@click.option("--mu", "mu", required=True, type=int)
@_json_opt
def thresholds(s, t, m, mu, as_json):
    """Print the extraction and transformation threshold constants."""
    try:
        bundle = compute_thresholds(s, t, m, mu)
    except GraphError as exc:
        _fail_usage(str(exc))
    record = {
        "s": s,
        "t": t,
        "m": m,
        "mu": mu,
        "n_t": bundle.n_t,
        "M": bundle.M_val,
        "N": bundle.N_val,
        "C": bundle.C_val,
        "K": bundle.K_val,
    }
    _emit(
        record,
        as_json,
        [
            f"n_t = {bundle.n_t}",
            f"M = {bundle.M_val}",
            f"N = {bundle.N_val}",
            f"C = {bundle.C_val}",
            f"K = {bundle.K_val}",
        ],
    )


@main.command("extract-matching")
@_graph_opt
@click.option("--matching", "matching_path", required=True, type=click.Path(dir_okay=False))
@click.option("--s", "s", required=True, type=int)
@click.option("--t", "t", required=True, type=int)
@_json_opt
def extract_matching_cmd(graph_path, matching_path, s, t, as_json):
    """Extract an induced biclique or induced matching from a matching."""
    g = _load(parse_graph_file, graph_path)
    matching = _load(parse_matching_file, matching_path)
    try:
        record = extract_induced_matching(g, matching, s, t)
    except GraphError as exc:
        _fail_usage(str(exc))
    if record.outcome == "biclique":
        parts = [_vertices(record.biclique[0]), _vertices(record.biclique[1])]
        _emit(
            {
                "outcome": "biclique",
                "parts": parts,
                "induced": record.biclique_is_induced,
                "input_size": record.input_size,
                "threshold": record.threshold,
            },
            as_json,
            [f"biclique parts={parts} induced={record.biclique_is_induced}"],
        )
    else:
        _emit(
            {
                "outcome": "matching",
                "matching": _edges(record.matching),
                "achieved": record.achieved,
                "promised": record.promised,
                "guarantee": record.guarantee,
                "input_size": record.input_size,
                "threshold": record.threshold,
                "note": record.note,
            },
            as_json,
            [
                f"matching={_edges(record.matching)} achieved={record.achieved}"
                + (f" note: {record.note}" if record.note else "")
            ],
        )


@main.command("extract-sets")
@_graph_opt
@click.option("--sets", "sets_path", required=True, type=click.Path(dir_okay=False))
@click.option("--s", "s", required=True, type=int)
@click.option("--t", "t", required=True, type=int)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-iterations", type=int, default=None, help="default 50*(s+1)")
@_json_opt
def extract_sets_cmd(graph_path, sets_path, s, t, seed, max_iterations, as_json):
    """Las Vegas extraction of mutually independent subsets."""
    g = _load(parse_graph_file, graph_path)
    sets = _load(parse_sets_file, sets_path)
    try:
        record = extract_independent_sets(g, sets, s, t, seed=seed, max_iterations=max_iterations)
    except GraphError as exc:
        _fail_usage(str(exc))
    if record.success:
        survivors = [_vertices(kept) for kept in record.survivors]
        _emit(
            {
                "outcome": "success",
                "iterations": record.iterations,
                "survivors": survivors,
                "edge_counts": list(record.edge_counts),
            },
            as_json,
            [f"success after {record.iterations} iterations", f"survivors={survivors}"],
        )
        sys.exit(0)
    densest = None if record.densest_pair is None else [i + 1 for i in record.densest_pair]
    _emit(
        {
            "outcome": "failure",
            "iterations": record.iterations,
            "min_edge_count": record.min_edge_count,
            "densest_pair": densest,
            "densest_pair_edges": record.densest_pair_edges,
        },
        as_json,
        [
            f"failure after {record.iterations} iterations: "
            f"min sampled edges {record.min_edge_count}, densest pair {densest} "
            f"with {record.densest_pair_edges} edges"
        ],
    )
    sys.exit(1)


@main.command()
@_graph_opt
@_td_opt
@click.option("--mu", "mu", required=True, type=int)
@click.option("--t", "t", required=True, type=int)
@click.option(
    "--threshold",
    "threshold",
    type=int,
    default=None,
    help="override the light/heavy threshold (skips certification)",
)
@click.option("--out", "out_path", type=click.Path(dir_okay=False))
@_json_opt
def transform(graph_path, td_path, mu, t, threshold, out_path, as_json):
    """Transform a decomposition, certifying the bag-independence cap."""
    g = _load(parse_graph_file, graph_path)
    td = _load(parse_td_file, td_path, g)
    from .graph import max_independent_set

    if threshold is not None:
        try:
            state = make_transform_state(g, td, max_independent_set(g), threshold)
            transformed, leaf_map = build_transformed_decomposition(g, td, state)
        except GraphError as exc:
            _fail_usage(str(exc))
        check = validate_td(g, transformed)
        record = {
            "certified": False,
            "threshold": threshold,
            "light": _vertices(state.light),
            "heavy": _vertices(state.heavy),
            "valid": check.ok,
            "td": td_to_text(transformed, g.n),
        }
        lines = [
            f"threshold={threshold} light={_vertices(state.light)} heavy={_vertices(state.heavy)}",
            f"valid={check.ok}",
        ]
    else:
        try:
            result = run_certified_pipeline(g, td, mu, t)
        except PreconditionViolation as exc:
            _emit(
                {"certified": False, "precondition": exc.kind, "detail": str(exc)},
                as_json,
                [f"precondition failed: {exc}"],
            )
            sys.exit(1)
        except GraphError as exc:
            _fail_usage(str(exc))
        transformed = result.transformed
        record = {
            "certified": True,
            "mu": mu,
            "t": t,
            "M": result.m_threshold,
            "C": result.c_threshold,
            "K": result.k_threshold,
            "light": _vertices(result.state.light),
            "heavy": _vertices(result.state.heavy),
            "residual_values": list(result.residual_report.values),
            "light_values": list(result.light_report.values),
            "heavy_values": list(result.heavy_report.values),
            "alpha": result.alpha_report.value,
            "td": td_to_text(transformed, g.n),
        }
        lines = [
            f"light={_vertices(result.state.light)} heavy={_vertices(result.state.heavy)}",
            f"residual<{result.m_threshold}: max {max(result.residual_report.values, default=0)}",
            f"light-neighborhood<{mu * result.c_threshold}: "
            f"max {max(result.light_report.values, default=0)}",
            f"heavy-overlap<{result.m_threshold}: max {max(result.heavy_report.values, default=0)}",
            f"alpha={result.alpha_report.value} < K={result.k_threshold}",
        ]
    if out_path:
        write_td_file(out_path, transformed, g.n)
    elif not as_json:
        lines.insert(0, td_to_text(transformed, g.n).rstrip("\n"))
    _emit(record, as_json, lines)


@main.command()
@click.option("--t", "t", required=True, type=int)
@click.option("--seeds", "seeds", type=int, default=20, show_default=True, help="number of seeds")
@click.option("--seed", "base_seed", type=int, default=0, show_default=True, help="first seed")
@_json_opt
def lowerbound(t, seeds, base_seed, as_json):
    """Run the random lower-bound experiment across seeds."""
    for seed in range(base_seed, base_seed + seeds):
        try:
            trial = run_lower_bound_trial(t, seed)
        except (GraphError, LimitExceededError) as exc:
            _fail_usage(str(exc))
        props = trial.properties
        record = {
            "t": t,
            "seed": seed,
            "side_size": trial.side_size,
            "edges": trial.edge_count,
            "biclique_free": props.biclique_free,
            "co_biclique_free": props.co_biclique_free,
            "no_t_matching": props.no_t_matching,
            "all_pass": props.all_pass,
            "bound": None if trial.separator is None else trial.separator.bound,
            "vacuous": None if trial.separator is None else trial.separator.vacuous,
        }
        _emit(
            record,
            as_json,
            [
                f"seed={seed} n={trial.side_size} edges={trial.edge_count} "
                f"biclique_free={props.biclique_free} co_biclique_free={props.co_biclique_free} "
                f"no_t_matching={props.no_t_matching} bound={record['bound']}"
            ],
        )


@main.command("kst-check")
@click.option("--max-n", "max_n", required=True, type=int)
@click.option("--t", "t", required=True, type=int)
@_json_opt
def kst_check(max_n, t, as_json):
    """Exhaustively verify the biclique-free edge bound on small graphs."""
    try:
        report = kst_exhaustive_check(max_n, t)
    except GraphError as exc:
        _fail_usage(str(exc))
    for row in report.rows:
        record = {
            "n": row.n,
            "t": t,
            "graphs": row.graphs,
            "free": row.free_count,
            "max_free_edges": row.max_free_edges,
            "allowed_edges": row.allowed_edges,
            "bound": row.bound,
            "violations": row.violations,
        }
        _emit(
            record,
            as_json,
            [
                f"n={row.n} graphs={row.graphs} free={row.free_count} "
                f"max_free_edges={row.max_free_edges} allowed={row.allowed_edges} "
                f"violations={row.violations}"
            ],
        )
    sys.exit(1 if report.violations else 0)


if __name__ == "__main__":
    main()
