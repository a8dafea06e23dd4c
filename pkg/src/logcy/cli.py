"""Command line interface: ``logcy <group> <command> [options]``.

Every command prints one JSON object. Exit status is 0 on success, 1 on a
domain error (``{"error": code, "detail": ...}``) and 2 on a usage error.
"""

import argparse
import sys
from pathlib import Path

from . import arrangement as arr
from . import bott, fibration, pairs
from .documents import SCHEMA_VERSION, _rational, dumps, parse, rational_str, to_document
from .errors import LogCYError, SchemaError
from .fan import orbit_strata, star_subdivision

__all__ = ["run", "main"]


def _q(x):
    return rational_str(x)


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load(path, expected):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    return parse(text, expected)


def _tri(t):
    return list(t)


def _tristate(x):
    return "unknown" if x is None else x


def _report(rep):
    return {
        "complexity": _q(rep.complexity),
        "index": rep.index,
        "lc": _tristate(rep.lc),
        "log_cy": rep.log_cy,
    }


# fan ----------------------------------------------------------------------


def cmd_fan_check(a):
    fan = _load(a.input, "fan")
    strata = orbit_strata(fan)
    by_codim = [0] * (fan.rank + 1)
    for _, codim in strata:
        by_codim[codim] += 1
    return {
        "rank": fan.rank,
        "n_rays": fan.n_rays,
        "simplicial": fan.simplicial,
        "complete": fan.complete,
        "smooth": fan.smooth,
        "strata": len(strata),
        "strata_by_codim": by_codim,
    }


def cmd_fan_subdivide(a):
    fan = _load(a.input, "fan")
    new, k = star_subdivision(fan, a.vector)
    return {"new_ray": k, "fan": to_document(new)}


# pair ---------------------------------------------------------------------


def cmd_pair_report(a):
    return _report(pairs.report(_load(a.input, ("pair", "numerical_pair"))))


def cmd_pair_discrepancy(a):
    pair = _load(a.input, "pair")
    return {"log_discrepancy": _q(pairs.log_discrepancy(pair, a.vector))}


def cmd_pair_lc_centers(a):
    pair = _load(a.input, "pair")
    return {"lc_centers": [list(c) for c in pairs.lc_centers(pair)]}


def cmd_pair_sections(a):
    value = _load(a.input, ("fan", "pair"))
    fan = getattr(value, "fan", value)
    return {"sections": pairs.divisor_sections(fan, a.divisor)}


# arrangement --------------------------------------------------------------


def cmd_arr_report(a):
    pair = _load(a.input, "arrangement")
    out = _report(arr.check_pair(pair))
    out["points"] = [
        {"point": [_q(x) for x in p], "lines": sorted(through)}
        for p, through in arr.incidence_points(pair)
    ]
    return out


def cmd_arr_lambda(a):
    pair = _load(a.pair, "arrangement")
    rep = arr.lambda_invariants(pair, a.triangle)
    return {"lambda1": _q(rep.lambda1), "lambda2": _q(rep.lambda2)}


def cmd_arr_triangles(a):
    pair = _load(a.input, "arrangement")
    return {"triangles": [_tri(t) for t in arr.associated_triangles(pair)]}


def cmd_arr_decompose(a):
    pair = _load(a.input, "arrangement")
    parts = arr.decompose(pair, require=a.require or ())
    return {"decomposition": [{"triangle": _tri(t), "weight": _q(w)} for t, w in parts]}


# fibration ----------------------------------------------------------------


def _morph(a):
    f = _load(a.input, "morphism")
    return f, fibration.split_fan(f)


def cmd_fib_split(a):
    f, s = _morph(a)
    return {
        "fiber_rays": list(s.fiber_rays),
        "lift_map": {str(t): i for t, i in sorted(s.lift_map.items())},
        "fiber_subfan": [list(c) for c in s.fiber_subfan],
        "section_subfan": [list(c) for c in s.section_subfan],
        "decomposes": fibration.sum_decomposition_holds(f, s),
    }


def cmd_fib_trivial(a):
    f, s = _morph(a)
    return {"locally_trivial": _tristate(fibration.is_locally_trivial(f, s))}


def cmd_fib_fiber(a):
    f, s = _morph(a)
    ft = fibration.fiber_type(f, s)
    return {
        "fiber": None if ft.fan is None else to_document(ft.fan),
        "weights": None if ft.weights is None else list(ft.weights),
    }


def cmd_fib_bundles(a):
    f, s = _morph(a)
    e = fibration.extract_line_bundles(f, s)
    return {
        "section": [list(r) for r in e.section],
        "fiber_basis": [list(v) for v in e.fiber_basis],
        "twists": [list(r) for r in e.twists],
        "line_bundle_classes": [list(c) for c in e.line_bundle_classes],
    }


def cmd_fib_cbf(a):
    f = _load(a.input, "morphism")
    if a.coeffs is not None:
        coeffs = [_rational(c.strip(), f"--coeffs[{i}]") for i, c in enumerate(a.coeffs.split(","))]
        pair = pairs.ToricPair(f.source, tuple(coeffs))
    else:
        pair = pairs.full_boundary(f.source)
    out = fibration.cbf_pushforward(pair, f)
    return {
        "coeffs": [_q(c) for c in out.coeffs],
        "moduli": fibration.MODULI_PART,
        "pair": to_document(out),
    }


# bott ---------------------------------------------------------------------


def cmd_bott_build(a):
    spec = _load(a.input, "tower_spec")
    rep = bott.build_bott_tower(spec)
    return {"stage_dims": list(rep.stage_dims), "fan": to_document(rep.fans[-1])}


def cmd_bott_recognize(a):
    fan = _load(a.input, "fan")
    rep = bott.recognize_bott_tower(fan)
    if not rep:
        return {"is_tower": False, "reason": rep.reason, "stage_dims": None}
    return {"is_tower": True, "stage_dims": list(rep.stage_dims)}


def cmd_bott_example(a):
    _, pair = bott.build_index_example(a.d, a.n, a.m)
    return to_document(pair)


# --------------------------------------------------------------------------


def _parser():
    p = argparse.ArgumentParser(prog="logcy", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=SCHEMA_VERSION)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the JSON result to this file")
    groups = p.add_subparsers(dest="group", required=True)

    def leaf(group, name, fn, *args):
        sp = group.add_parser(name, parents=[common])
        for flags, kw in args:
            sp.add_argument(*flags, **kw)
        sp.set_defaults(fn=fn)
        return sp

    inp = (("--input",), {"required": True})
    vec = (("--vector",), {"required": True, "type": _ints})

    g = groups.add_parser("fan").add_subparsers(dest="cmd", required=True)
    leaf(g, "check", cmd_fan_check, inp)
    leaf(g, "subdivide", cmd_fan_subdivide, inp, vec)

    g = groups.add_parser("pair").add_subparsers(dest="cmd", required=True)
    leaf(g, "report", cmd_pair_report, inp)
    leaf(g, "discrepancy", cmd_pair_discrepancy, inp, vec)
    leaf(g, "lc-centers", cmd_pair_lc_centers, inp)
    leaf(g, "sections", cmd_pair_sections, inp,
         (("--divisor",), {"required": True, "type": _ints}))

    g = groups.add_parser("arr").add_subparsers(dest="cmd", required=True)
    leaf(g, "report", cmd_arr_report, inp)
    leaf(g, "lambda", cmd_arr_lambda,
         (("--pair", "--input"), {"required": True, "dest": "pair"}),
         (("--triangle",), {"required": True, "type": _ints}))
    leaf(g, "triangles", cmd_arr_triangles, inp)
    leaf(g, "decompose", cmd_arr_decompose, inp,
         (("--require",), {"action": "append", "type": _ints,
                           "help": "triangle that must get positive weight (repeatable)"}))

    g = groups.add_parser("fib").add_subparsers(dest="cmd", required=True)
    leaf(g, "split", cmd_fib_split, inp)
    leaf(g, "trivial", cmd_fib_trivial, inp)
    leaf(g, "fiber", cmd_fib_fiber, inp)
    leaf(g, "bundles", cmd_fib_bundles, inp)
    leaf(g, "cbf", cmd_fib_cbf, inp,
         (("--coeffs",), {"help": "source coefficients, e.g. 1,1/2,0 (default: all ones)"}))

    g = groups.add_parser("bott").add_subparsers(dest="cmd", required=True)
    leaf(g, "build", cmd_bott_build, inp)
    leaf(g, "recognize", cmd_bott_recognize, inp)
    leaf(g, "example", cmd_bott_example,
         (("--d",), {"required": True, "type": int}),
         (("--n",), {"required": True, "type": int}),
         (("--m",), {"required": True, "type": int}))
    return p


def _emit(obj, output, stream):
    text = dumps(obj)
    if output:
        Path(output).write_text(text)
    else:
        stream.write(text)


def run(argv=None, stdout=None):
    """Run the CLI and return the exit status."""
    stdout = stdout or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        result = args.fn(args)
    except LogCYError as e:
        _emit({"error": e.code, "detail": e.detail}, None, stdout)
        return 1
    _emit(result, args.output, stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
