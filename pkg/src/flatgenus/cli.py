"""Command-line front end: JSON/CSV reports over all toolkit modules.

Exit codes: 0 success (including "indeterminate" verdicts), 1 domain error
(machine-readable error JSON on stdout), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bieberbach as bb
from . import classdata, cplattice, cyclotomic
from .cplattice import IndeterminateClassError
from .intmat import IntMatrix, format_matrix_text, parse_matrix_text

BIG = 2**63


def _jsonable(obj):
    """Recursively convert to JSON types; ints beyond 64 bits become strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= BIG else obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    raise TypeError("cannot serialize %r" % type(obj))


def _emit(report):
    json.dump(_jsonable(report), sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _read_ideal(path):
    with open(path) as fh:
        return cyclotomic.ideal_from_dict(json.load(fh))


def _write_ideal(ideal, out):
    text = json.dumps(_jsonable(cyclotomic.ideal_to_dict(ideal)), sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_action(path, p=None):
    """Lattice-action file: "p" header line, or a bare matrix plus -p."""
    with open(path) as fh:
        text = fh.read()
    first = text.lstrip().splitlines()[0].split()
    if len(first) == 1:
        action = cplattice.parse_lattice_action(text)
        if p is not None and p != action.p:
            raise ValueError("file header p = %d, flag says %d" % (action.p, p))
        return action
    if p is None:
        raise ValueError("matrix file has no p header; pass -p")
    return cplattice.LatticeAction(p, parse_matrix_text(text))


def _class_group(args):
    return classdata.class_group(
        args.p,
        path=getattr(args, "class_file", None),
        allow_override=getattr(args, "allow_override", False),
    )


def _parse_ints(text):
    return tuple(int(x) for x in text.split(",")) if text else ()


def _theta(args):
    return _parse_ints(getattr(args, "theta", None) or "")


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_classnumber(args):
    _emit({"p": args.p, "h_minus": classdata.maillet_h_minus(args.p)})


def _cmd_classgroup_show(args):
    _emit(classdata.class_group_to_dict(_class_group(args)))


def _cmd_orbits(args):
    h = _class_group(args)
    spec = classdata.SubgroupSpec.FULL_GALOIS if args.subgroup == "full" else classdata.SubgroupSpec.C2
    reps = classdata.orbits(h, spec)
    _emit({
        "p": args.p,
        "subgroup": args.subgroup,
        "count": len(reps),
        "representatives": [list(r) for r in reps],
    })


def _cmd_ideal_split(args):
    _write_ideal(cyclotomic.split_prime_ideal(args.p, args.q), args.out)


def _cmd_ideal_norm(args):
    ideal = _read_ideal(args.ideal)
    _emit({"p": ideal.p, "norm": cyclotomic.ideal_norm(ideal)})


def _cmd_ideal_mul(args):
    a = _read_ideal(args.ideals[0])
    b = _read_ideal(args.ideals[1])
    _write_ideal(cyclotomic.ideal_mul(a, b), args.out)


def _cmd_ideal_galois(args):
    ideal = _read_ideal(args.ideal)
    s = cyclotomic.GaloisElement(ideal.p, args.k)
    _write_ideal(cyclotomic.galois_apply(s, ideal), args.out)


def _cmd_ideal_principal(args):
    ideal = _read_ideal(args.ideal)
    result = cyclotomic.is_principal(ideal, Fraction(args.multiplier))
    report = {"p": ideal.p, "status": result.status, "bound": result.bound}
    if result.generator is not None:
        report["generator"] = list(result.generator.coeffs)
    _emit(report)


def _cmd_decompose(args):
    action = _read_action(args.matrix, args.p)
    inv = cplattice.invariants(action)
    _emit({
        "p": action.p,
        "n": action.n,
        "a": inv.a,
        "b": inv.b,
        "c": inv.c,
        "local_types": cplattice.local_types(action),
    })


def _cmd_construct(args):
    a, b, c = _parse_ints(args.tuple)
    ideals = [_read_ideal(path) for path in (args.ideals or [])]
    if not ideals and b + c:
        ideals = [cyclotomic.unit_ideal(args.p) for _ in range(b + c)]
    action = cplattice.construct(args.p, a, b, c, ideals)
    text = cplattice.format_lattice_action(action)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_steinitz(args):
    action = _read_action(args.matrix, args.p)
    h = _class_group(argparse.Namespace(
        p=action.p, class_file=args.class_file, allow_override=args.allow_override
    ))
    try:
        theta = cplattice.steinitz_class(action, h)
    except IndeterminateClassError:
        _emit({"p": action.p, "steinitz": "indeterminate"})
        return
    _emit({"p": action.p, "steinitz": list(theta)})


def _bb_class(args, h):
    a, b, c = _parse_ints(args.tuple)
    return bb.make_class(args.p, a, b, c, _theta(args), h)


def _cmd_bb_validate(args):
    _emit(bb.class_to_dict(_bb_class(args, _class_group(args))))


def _cmd_bb_build(args):
    h = _class_group(args)
    pres = bb.build_affine(_bb_class(args, h), h, semidirect=args.semidirect)
    text = bb.format_affine(pres)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _two_classes(args, h):
    a1, b1, c1 = _parse_ints(args.tuple1)
    a2, b2, c2 = _parse_ints(args.tuple2)
    t1 = _parse_ints(args.theta1 or "")
    t2 = _parse_ints(args.theta2 or "")
    return (
        bb.make_class(args.p, a1, b1, c1, t1, h),
        bb.make_class(args.p, a2, b2, c2, t2, h),
    )


def _cmd_bb_iso(args):
    h = _class_group(args)
    c1, c2 = _two_classes(args, h)
    _emit({"p": args.p, "group_iso": bb.group_iso(c1, c2, h)})


def _cmd_bb_profinite_iso(args):
    h = _class_group(args)
    c1, c2 = _two_classes(args, h)
    _emit({"p": args.p, "profinite_iso": bb.profinite_iso(c1, c2)})


def _cmd_bb_genus(args):
    h = _class_group(args)
    cls = _bb_class(args, h)
    members = bb.genus_members(cls, h)
    _emit({
        "p": args.p,
        "genus_size": bb.genus_size(cls, h),
        "members": [bb.class_to_dict(m) for m in members],
    })


def _cmd_bb_enumerate(args):
    h = _class_group(args)
    result = bb.enumerate_classes(args.n, args.p, h)
    if args.format == "csv":
        sys.stdout.write("p,n,a,b,c,theta,exceptional\n")
        for cls in result["iso_classes"]:
            sys.stdout.write(
                "%d,%d,%d,%d,%d,%s,%s\n"
                % (
                    cls.p, cls.dimension, cls.a, cls.b, cls.c,
                    ";".join(str(e) for e in cls.theta),
                    "true" if cls.exceptional else "false",
                )
            )
        return
    _emit({
        "p": args.p,
        "n": args.n,
        "iso_classes": [bb.class_to_dict(c) for c in result["iso_classes"]],
        "profinite_classes": [list(t) for t in result["profinite_classes"]],
    })


def _cmd_bb_fingerprint(args):
    moduli = _parse_ints(args.moduli)
    if args.affine:
        with open(args.affine) as fh:
            pres = bb.parse_affine(fh.read())
    else:
        h = _class_group(args)
        pres = bb.build_affine(_bb_class(args, h), h)
    _emit({"p": pres.p, "n": pres.n, "fingerprint": bb.fingerprint(pres, moduli)})


# ---------------------------------------------------------------------------
# Parser


def _add_class_data_flags(sp):
    sp.add_argument("--class-file", default=None, help="class-group data JSON file")
    sp.add_argument("--allow-override", action="store_true",
                    help="let the file override builtin class data")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="flatgenus",
        description="Exact classification toolkit for prime-order lattice "
        "actions and flat-manifold fundamental groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classnumber", help="relative class number h_p^-")
    sp.add_argument("-p", type=int, required=True)
    sp.set_defaults(func=_cmd_classnumber)

    cg = sub.add_parser("classgroup", help="class-group structure")
    cg_sub = cg.add_subparsers(dest="subcommand", required=True)
    sp = cg_sub.add_parser("show")
    sp.add_argument("-p", type=int, required=True)
    _add_class_data_flags(sp)
    sp.set_defaults(func=_cmd_classgroup_show)

    sp = sub.add_parser("orbits", help="Galois orbits on the class group")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--subgroup", choices=["full", "c2"], required=True)
    _add_class_data_flags(sp)
    sp.set_defaults(func=_cmd_orbits)

    ideal = sub.add_parser("ideal", help="ideal arithmetic in Z[zeta_p]")
    ideal_sub = ideal.add_subparsers(dest="subcommand", required=True)
    sp = ideal_sub.add_parser("split", help="degree-one prime over q = 1 mod p")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-q", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_ideal_split)
    sp = ideal_sub.add_parser("norm")
    sp.add_argument("--ideal", required=True)
    sp.set_defaults(func=_cmd_ideal_norm)
    sp = ideal_sub.add_parser("mul")
    sp.add_argument("ideals", nargs=2, metavar="IDEAL")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_ideal_mul)
    sp = ideal_sub.add_parser("galois", help="apply sigma_k")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_ideal_galois)
    sp = ideal_sub.add_parser("principal", help="bounded principality search")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--multiplier", default="4", help="search radius multiplier")
    sp.set_defaults(func=_cmd_ideal_principal)

    sp = sub.add_parser("decompose", help="invariants (a, b, c) of an action matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("-p", type=int, default=None)
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("construct", help="block action from invariants")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--tuple", required=True, metavar="a,b,c")
    sp.add_argument("--ideals", nargs="*", default=None, metavar="IDEAL_FILE")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("steinitz", help="Steinitz class of the ideal part")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("-p", type=int, default=None)
    _add_class_data_flags(sp)
    sp.set_defaults(func=_cmd_steinitz)

    b = sub.add_parser("bieberbach", help="flat-manifold group classification")
    b_sub = b.add_subparsers(dest="subcommand", required=True)

    sp = b_sub.add_parser("validate", help="canonical classification tuple")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--tuple", required=True, metavar="a,b,c")
    sp.add_argument("--theta", default=None, metavar="e1,e2,...")
    _add_class_data_flags(sp)
    sp.set_defaults(func=_cmd_bb_validate)

    sp = b_sub.add_parser("build", help="affine model")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--tuple", required=True, metavar="a,b,c")
    sp.add_argument("--theta", default=None)
    sp.add_argument("--semidirect", action="store_true",
                    help="v = 0 variant (not torsion-free)")
    sp.add_argument("--out", default=None)
    _add_class_data_flags(sp)
    sp.set_defaults(func=_cmd_bb_build)

    for name, fn in (("iso", _cmd_bb_iso), ("profinite-iso", _cmd_bb_profinite_iso)):
        sp = b_sub.add_parser(name)
        sp.add_argument("-p", type=int, required=True)
        sp.add_argument("--tuple1", required=True)
        sp.add_argument("--theta1", default=None)
        sp.add_argument("--tuple2", required=True)
        sp.add_argument("--theta2", default=None)
        _add_class_data_flags(sp)
        sp.set_defaults(func=fn)

    sp = b_sub.add_parser("genus", help="genus size and members")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--tuple", required=True)
    sp.add_argument("--theta", default=None)
    _add_class_data_flags(sp)
    sp.set_defaults(func=_cmd_bb_genus)

    sp = b_sub.add_parser("enumerate", help="all classes in dimension n")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    _add_class_data_flags(sp)
    sp.set_defaults(func=_cmd_bb_enumerate)

    sp = b_sub.add_parser("fingerprint", help="abelianization and congruence data")
    sp.add_argument("-p", type=int, default=None)
    sp.add_argument("--tuple", default=None)
    sp.add_argument("--theta", default=None)
    sp.add_argument("--affine", default=None, help="affine model file")
    sp.add_argument("--moduli", default="2,3,4,5,8,9")
    _add_class_data_flags(sp)
    sp.set_defaults(func=_cmd_bb_fingerprint)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bieberbach" and args.subcommand == "fingerprint":
        if not args.affine and not (args.p and args.tuple):
            parser.error("fingerprint needs --affine or both -p and --tuple")
    try:
        args.func(args)
    except (ValueError, ArithmeticError, OSError, KeyError) as exc:
        json.dump({"error": str(exc)}, sys.stdout)
        sys.stdout.write("\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
