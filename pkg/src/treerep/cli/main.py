"""Command-line driver: ordered ``key: value`` reports with exit codes.

Exit codes: 0 success; 1 parse error; 2 determinant not one, mode mismatch or
refused input; 3 when any sub-verdict is inconclusive or budget-limited.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .. import bttree, hodgesign, integrality, orbicurve, rigidkit, sl2kit, treeharm
from ..errors import (
    DegenerateInput,
    DeterminantNotOne,
    ModeMismatch,
    NumericallySingular,
    Obstructed,
    ParseError,
    PrecisionExhausted,
    SearchBudgetExceeded,
    SweepBudgetExceeded,
    TreeRepError,
)
from ..matrix import display_word, free_reduce, is_zero
from .fileformat import RepFile, embed_repfile, format_entry, format_matrix, parse_file, serialize

OK, PARSE, REFUSED, INCONCLUSIVE = 0, 1, 2, 3

COMMANDS = ("analyze", "tree", "complete", "integrality", "rigidity", "hypergeom", "orbibounds", "harmonic", "hodge")
NEEDS_FILE = {"analyze", "tree", "complete", "integrality", "rigidity", "harmonic", "hodge"}
MODES = {
    "analyze": {"number", "laurent", "ratfunc"},
    "tree": {"laurent", "ratfunc"},
    "complete": {"ratfunc"},
    "integrality": {"number"},
    "rigidity": {"number"},
    "harmonic": {"laurent"},
    "hodge": {"cm"},
}


class Report:
    def __init__(self, command: str):
        self.lines: list[str] = []
        self.code = OK
        self.add("command", command)

    def add(self, key, value):
        self.lines.append(f"{key}: {value}")

    def extend(self, pairs):
        for k, v in pairs:
            self.add(k, v)

    def block(self, lines):
        self.lines.extend(lines)

    def inconclusive(self):
        self.code = max(self.code, INCONCLUSIVE)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _defaults(flags: dict) -> dict:
    base = {
        "max_word_len": None,
        "prec": 64,
        "place": "inf",
        "radius": 2,
        "sweeps": 100,
        "dot": None,
        "figure": None,
        "emit": None,
        "targets": None,
        "genus": 1,
        "punctures": 0,
        "indices": None,
        "index_bound": None,
        "max_points": None,
        "classes": "u,u,request",
    }
    base.update({k: v for k, v in flags.items() if v is not None})
    return base


def _write(path, text):
    Path(path).write_text(text)
    return str(path)


# --- commands -----------------------------------------------------------------

def _density_lines(rep: Report, verdict):
    rep.add("density", verdict.label)
    rep.add("density_max_word_len", verdict.max_word_len)
    rep.add("density_pairs_checked", verdict.pairs_checked)
    if verdict.dense:
        rep.add("density_witness", f"{verdict.alpha},{verdict.beta},{verdict.infinite_order}")
        rep.add("density_trace_difference", format_entry(verdict.difference))
    else:
        rep.add("density_infinite_order", verdict.infinite_order or "-")
        rep.inconclusive()


def _puncture_status(M):
    """(class, status) for a puncture matrix; status 'unknown' when precision runs out."""
    kind = sl2kit.conjugacy_class_kind(M).kind.value
    try:
        qu = sl2kit.quasi_unipotence(M)
    except PrecisionExhausted:
        return kind, "unknown"
    if qu is None:
        return kind, "no"
    return kind, f"yes order={qu.order}"


def cmd_analyze(rf: RepFile, fl: dict, rep: Report):
    pres = rf.presentation()
    rep.add("mode", rf.mode)
    rep.add("field", rf.spec.header().removeprefix("field "))
    rep.add("generators", ",".join(pres.generators))
    names = list(pres.generators)
    if len(names) >= 2:
        A, B = pres.generators[names[0]], pres.generators[names[1]]
        AB = A @ B
        rep.add(f"trace[{names[0]}{names[1]}{names[0]}{names[1]}]", format_entry((AB @ AB).trace()))
        rep.add(f"trace[{names[0] * 2}{names[1] * 2}]", format_entry((A @ A @ B @ B).trace()))
    _density_lines(rep, sl2kit.zariski_density_check(pres, fl["max_word_len"] or 4))
    for w in pres.punctures:
        kind, status = _puncture_status(pres.evaluate(w))
        if status == "unknown":
            rep.inconclusive()
        rep.add(f"puncture[{display_word(free_reduce(w))}]", f"class={kind} quasi_unipotent={status}")


def _laurent_presentation(rf: RepFile, fl: dict):
    pres = rf.presentation()
    if rf.mode == "ratfunc":
        place = sl2kit.parse_place(str(fl["place"]))
        return sl2kit.complete_representation(pres, place, fl["prec"]), sl2kit.place_label(place)
    return pres, None


def cmd_tree(rf: RepFile, fl: dict, rep: Report):
    pres, place = _laurent_presentation(rf, fl)
    rep.add("mode", rf.mode)
    if place is not None:
        rep.add("place", place)
    rep.add("p", pres.spec.p)
    rep.add("precision", pres.spec.prec)
    for n, g in pres.generators.items():
        rep.add(f"translation_length[{n}]", sl2kit.translation_length(g))
    verdict = sl2kit.is_bounded(pres.generators)
    rep.add("bounded", "yes" if verdict.bounded else "no")
    rep.add("witness", verdict.witness or "-")
    p = pres.spec.p
    if verdict.bounded:
        rep.add("fixed_vertex", verdict.vertex)
        center = verdict.vertex
        marked = [v for v in bttree.ball(center, fl["radius"]) if all(bttree.is_fixed(g, v) for g in pres.generators.values())]
        rep.add("common_fixed_in_ball", len(marked))
    else:
        rep.add("translation_length", verdict.translation)
        g = pres.evaluate(verdict.witness)
        center = bttree.base_vertex(p)
        ell = verdict.translation
        marked = [v for v in bttree.ball(center, fl["radius"]) if sl2kit.displacement(g, v) == ell]
        rep.add("axis_vertices_in_ball", len(marked))
    rep.add("radius", fl["radius"])
    if fl["dot"]:
        rep.add("dot", _write(fl["dot"], bttree.ball_dot(center, fl["radius"], marked, "tree")))
    if fl["figure"]:
        from .plotting import plot_tree_ball

        rep.add("figure", plot_tree_ball(center, fl["radius"], fl["figure"], marked))


def cmd_complete(rf: RepFile, fl: dict, rep: Report):
    place = sl2kit.parse_place(str(fl["place"]))
    result = sl2kit.complete_and_test(rf.presentation(), place, fl["prec"], fl["max_word_len"] or 4)
    rep.extend(result.lines())
    if not result.density.dense:
        rep.inconclusive()
    if fl["emit"]:
        rep.add("emit", _write(fl["emit"], serialize(result.completed, comments=[f"completed at {result.place}"])))


def cmd_integrality(rf: RepFile, fl: dict, rep: Report):
    result = integrality.integrality_scan(rf.presentation(), fl["max_word_len"] or integrality.DEFAULT_MAX_LEN)
    rep.add("field", rf.spec.header().removeprefix("field "))
    rep.extend(result.lines())


def _orbicurve_of(classes_and_orders):
    punct, idx = 0, []
    for kind, qu in classes_and_orders:
        if qu is None or qu.unipotent:
            punct += 1
        elif qu.order > 2:
            m = qu.order
            idx.append(m if m % 2 else m // 2)
    idx = [n for n in idx if n >= 2]
    return orbicurve.OrbicurveData(0, punct, tuple(idx))


def cmd_rigidity(rf: RepFile, fl: dict, rep: Report):
    pres = rf.presentation()
    words = pres.punctures or list(pres.generators)
    mats = [pres.evaluate(w) for w in words]
    specs, info = [], []
    for w, M in zip(words, mats):
        c = sl2kit.conjugacy_class_kind(M)
        qu = sl2kit.is_quasi_unipotent(M)
        specs.append(rigidkit.class_spec_of(M))
        info.append((c.kind, qu))
        order = "-" if qu is None else qu.order
        rep.add(f"class[{display_word(free_reduce(w))}]", f"{c.kind.value} order={order}")
    orb = _orbicurve_of(info)
    geom = orbicurve.classify_orbicurve(orb)
    rep.add("orbicurve", orb)
    rep.add("orbifold_euler_characteristic", orb.euler_characteristic)
    rep.add("geometry", geom.value)
    if geom is not orbicurve.GeomClass.HYPERBOLIC:
        rep.add("refused", "dense representations only live on hyperbolic orbicurves")
        rep.code = REFUSED
        return
    v = rigidkit.virtual_dimension(specs)
    rep.add("virtual_dimension", v)
    rep.add("rigid", "yes" if v == 0 else "no")
    _density_lines(rep, sl2kit.zariski_density_check(pres, fl["max_word_len"] or 4))
    if len(mats) == 3 and (mats[0] @ mats[1] @ mats[2]).is_identity():
        rep.add("verified_tuple", "yes" if rigidkit.verify_rigid_tuple(*mats, specs) else "no")
    else:
        rep.add("verified_tuple", "-")


def cmd_hypergeom(fl: dict, rep: Report):
    classes = rigidkit.parse_class_list(fl["classes"])
    if len(classes) != 3:
        raise ValueError("--classes needs exactly three class specs")
    rep.add("classes", ",".join(map(str, classes)))
    try:
        T = rigidkit.hypergeometric_build(*classes)
    except Obstructed as e:
        rep.add("status", "obstructed")
        rep.add("reason", e.reason)
        rep.code = REFUSED
        return
    rep.add("status", "built")
    rep.add("case", T.case)
    rep.add("arrangement", "; ".join(T.arrangement) or "-")
    rep.add("field", f"minpoly={_poly(T.field.minpoly)}")
    for name, M in zip("abc", T.matrices):
        rep.add(f"matrix[{name}]", format_matrix(M))
    rep.add("product[ab]", format_matrix(T.product))
    rep.add("product_trace", format_entry(T.product.trace()))
    ok = rigidkit.verify_rigid_tuple(*T.matrices, T.classes)
    rep.add("verified", "yes" if ok else "no")
    if not ok:
        rep.inconclusive()
    scan = integrality.integrality_scan(T.to_rep(), fl["max_word_len"] or integrality.DEFAULT_MAX_LEN)
    rep.extend(scan.lines())
    text = serialize(T.to_rep(), comments=[f"classes {','.join(map(str, classes))}", f"case {T.case}"])
    rep.block(embed_repfile(text))
    if fl["emit"]:
        rep.add("emit", _write(fl["emit"], text))


def _poly(minpoly):
    from ..arith.numberfield import format_poly

    return format_poly(minpoly).replace(" ", "")


def cmd_orbibounds(fl: dict, rep: Report):
    g, b = int(fl["genus"]), int(fl["punctures"])
    rep.add("genus", g)
    rep.add("punctures", b)
    if fl["indices"]:
        idx = tuple(int(x) for x in str(fl["indices"]).split(",") if x.strip())
        d = orbicurve.OrbicurveData(g, b, idx)
        rep.add("orbicurve", d)
        rep.add("orbifold_euler_characteristic", d.euler_characteristic)
        rep.add("geometry", orbicurve.classify_orbicurve(d).value)
        return
    overrides = fl["index_bound"] is not None
    try:
        br = orbicurve.index_bound_branches(g, b)
        rep.add("branch_positive_genus", br.positive_genus)
        rep.add("branch_index_at_least_3", br.some_index_at_least_3)
        rep.add("branch_two_indices_2", br.two_indices_equal_2)
        rep.add("index_bound", br.value)
    except DegenerateInput as e:
        if not overrides:
            raise
        rep.add("index_bound", f"override ({e})")
    n_max = int(fl["index_bound"]) if overrides else br.value
    k_max = int(fl["max_points"]) if fl["max_points"] is not None else orbicurve.orbifold_point_bound(g, b)
    rep.add("index_bound_used", n_max)
    rep.add("orbifold_point_bound", k_max)
    count = orbicurve.count_candidate_types(g, b, n_max, k_max)
    rep.add("candidate_types", count)
    if count <= 200:
        for i, d in enumerate(orbicurve.enumerate_candidate_types(g, b, n_max, k_max)):
            rep.add(f"type[{i}]", d)
    if fl["figure"] and not (g == 0 and b == 0):
        from .plotting import plot_index_bounds

        rep.add("figure", plot_index_bounds(g, b, fl["figure"]))


def cmd_harmonic(rf: RepFile, fl: dict, rep: Report):
    if not rf.edges:
        raise ModeMismatch("harmonic needs edge lines")
    G = rf.gain_graph()
    rep.add("vertices", ",".join(map(str, G.vertices)))
    rep.add("edges", len(G.edges))
    rep.add("cycle_rank", G.cycle_rank())
    res = treeharm.minimize(G, max_sweeps=int(fl["sweeps"]))
    rep.add("max_sweeps", res.max_sweeps)
    rep.add("sweeps", res.sweeps)
    rep.add("converged", "yes" if res.converged else "no")
    if not res.converged:
        rep.inconclusive()
    rep.add("energy_trace", ",".join(map(str, res.trace)))
    rep.add("energy", res.energy)
    for u in G.vertices:
        rep.add(f"vertex[{u}]", res.assignment[u])
    reeb = treeharm.reeb_contract(G, res.assignment)
    rep.add("reeb_nodes", len(reeb.nodes))
    rep.add("reeb_edges", " ".join(f"{i}->{j}:{w}" for i, j, w in reeb.edges) or "-")
    rep.add("reeb_cycle_rank", reeb.cycle_rank())
    rep.add("reeb_point", "yes" if reeb.is_point else "no")
    if fl["dot"]:
        rep.add("dot", _write(fl["dot"], reeb.to_dot()))
    if fl["figure"]:
        from .plotting import plot_energy_trace

        rep.add("figure", plot_energy_trace(res.trace, fl["figure"]))


def cmd_hodge(rf: RepFile, fl: dict, rep: Report):
    L = rf.spec.field
    gens = list(rf.generators.values())
    rep.add("field", L.header().removeprefix("field "))
    irreducible = any(
        not is_zero((g @ h @ g.adjugate() @ h.adjugate()).trace() - 2) for i, g in enumerate(gens) for h in gens[i + 1 :]
    )
    rep.add("irreducible", "yes" if irreducible else "not certified")
    space = hodgesign.invariant_form_space(gens, L, irreducible=irreducible)
    rep.add("form_space_dimension", len(space))
    if not space:
        return
    form = hodgesign.nondegenerate_member(space) or space[0]
    rep.add("form", format_matrix(form.matrix))
    rep.add("form_determinant", format_entry(form.determinant()))
    try:
        table = hodgesign.embedding_signs(form)
    except NumericallySingular as e:
        rep.add("signs", f"singular ({e})")
        rep.inconclusive()
        return
    for e in table:
        rep.add(f"embedding[{e.index}]", f"real_root={e.root:.12g} eps={e.eps:+d} sign={e.sign.value}")
    rep.add("mixed", sum(1 for e in table if e.sign is hodgesign.EmbeddingSign.MIXED))
    rep.add("polydisk_dimension", hodgesign.polydisk_dimension(form))
    if fl["targets"]:
        targets = [t.strip() for t in str(fl["targets"]).split(",")]
        lam = hodgesign.sign_fixing_lambda(L, targets)
        rep.add("lambda", format_entry(lam))
        scaled = hodgesign.embedding_signs(form.scale(lam))
        rep.add("scaled_signs", ",".join(e.sign.value for e in scaled))


# --- dispatch -------------------------------------------------------------------

def run(command: str, file=None, flags: dict | None = None) -> tuple[str, int]:
    """Run one command; ``file`` is a path or the file text itself.  Returns (report, exit code)."""
    fl = _defaults(flags or {})
    rep = Report(command)
    try:
        if command not in COMMANDS:
            raise ModeMismatch(f"unknown command {command!r}")
        rf = None
        if command in NEEDS_FILE:
            if file is None:
                raise ModeMismatch(f"{command} needs an input file")
            text = Path(file).read_text() if _looks_like_path(file) else str(file)
            rf = parse_file(text)
            if rf.mode not in MODES[command]:
                raise ModeMismatch(f"{command} does not accept a {rf.mode} field")
            if command == "harmonic" and not rf.edges:
                raise ModeMismatch("harmonic needs edge lines")
        handler = {
            "analyze": cmd_analyze,
            "tree": cmd_tree,
            "complete": cmd_complete,
            "integrality": cmd_integrality,
            "rigidity": cmd_rigidity,
            "harmonic": cmd_harmonic,
            "hodge": cmd_hodge,
        }.get(command)
        if handler is not None:
            handler(rf, fl, rep)
        elif command == "hypergeom":
            cmd_hypergeom(fl, rep)
        else:
            cmd_orbibounds(fl, rep)
    except ParseError as e:
        rep.add("error", f"parse: {e}")
        return rep.text(), PARSE
    except (DeterminantNotOne, ModeMismatch, DegenerateInput) as e:
        rep.add("error", f"{type(e).__name__}: {e}")
        return rep.text(), REFUSED
    except (PrecisionExhausted, SearchBudgetExceeded, SweepBudgetExceeded, NumericallySingular) as e:
        rep.add("error", f"{type(e).__name__}: {e}")
        return rep.text(), INCONCLUSIVE
    except (TreeRepError, ValueError) as e:
        rep.add("error", f"{type(e).__name__}: {e}")
        return rep.text(), REFUSED
    return rep.text(), rep.code


def _looks_like_path(file) -> bool:
    if isinstance(file, Path):
        return True
    s = str(file)
    return "\n" not in s and Path(s).exists()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="repcli", description="SL(2) representation diagnostics over trees and number fields.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", nargs="?", help="representation file (not needed for hypergeom, orbibounds)")
    ap.add_argument("--max-word-len", type=int, help="word length bound for density and integrality scans")
    ap.add_argument("--prec", type=int, help="Laurent precision for completions (default 64)")
    ap.add_argument("--place", help="'inf' or a constant c in F_p (default inf)")
    ap.add_argument("--radius", type=int, help="ball radius for DOT and figures (default 2)")
    ap.add_argument("--sweeps", type=int, help="sweep budget for the harmonic solver (default 100)")
    ap.add_argument("--dot", help="write a DOT digraph to this path")
    ap.add_argument("--figure", help="write a matplotlib figure to this path")
    ap.add_argument("--emit", help="write the produced representation file to this path")
    ap.add_argument("--classes", help="hypergeom: three class specs, e.g. u,u,request or u,e5,-u")
    ap.add_argument("--targets", help="hodge: signs per real embedding, e.g. +,-")
    ap.add_argument("--genus", type=int, help="orbibounds: genus bound g")
    ap.add_argument("--punctures", type=int, help="orbibounds: puncture bound b")
    ap.add_argument("--indices", help="orbibounds: classify the orbicurve with these cone indices")
    ap.add_argument("--index-bound", type=int, help="orbibounds: override the index bound N")
    ap.add_argument("--max-points", type=int, help="orbibounds: override the cone point bound K")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "file")}
    text, code = run(args.command, args.file, flags)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
