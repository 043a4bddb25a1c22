"""Command-line interface.

Subcommands operate on CMAP files (`-` reads standard input) and write CMAP
to standard output, so they compose through pipes.  Yes/no queries (`hom`,
`iso`, `is-core`) answer through the exit status: 0 yes, 1 no, 2 usage or
data error.
"""

from __future__ import annotations

import argparse
import sys

from . import cmapio
from .edgeops import classify_edge, contract, delete
from .errors import MapError
from .gluing import glue_duplicate, glue_vertices, split_edge, split_vertex
from .homs import apply_epimorphism, hom_exists, parse_step
from .mapmodel import Map, invariants, isomorphic
from .circuits import classify_circuit, cut_around, enumerate_circuits, is_non_self_intersecting
from .cores import core, core_oracle, is_core
from .families import (
    antichain_gadget,
    bouquet,
    canonical_nonorientable,
    canonical_orientable,
    catalog,
    cycle_map,
    enumerate_maps,
    theta_map,
)
from .poset import build_core_poset, export_dot, export_json


def _read(path: str) -> Map:
    if path == "-":
        return cmapio.loads(sys.stdin.read())
    return cmapio.read_path(path)


def _emit(m: Map) -> None:
    sys.stdout.write(cmapio.dumps(m))


def cmd_show(args):
    m = _read(args.file)
    b = invariants(m)
    print(
        f"v={b.v} e={b.e} f={b.f} k={b.k} chi={b.chi} eg={b.eg} o={b.o} g={b.g} sg={b.sg}"
    )
    return 0


def cmd_classify(args):
    m = _read(args.file)
    for e in range(m.edges):
        print(f"e{e}: {classify_edge(m, e).label()}")
    return 0


def cmd_delete(args):
    _emit(delete(_read(args.file), args.edge))
    return 0


def cmd_contract(args):
    _emit(contract(_read(args.file), args.edge))
    return 0


def cmd_glue_v(args):
    _emit(glue_vertices(_read(args.file), args.a, args.b))
    return 0


def cmd_glue_e(args):
    out, _ = glue_duplicate(_read(args.file), args.witness)
    _emit(out)
    return 0


def cmd_split_e(args):
    _emit(split_edge(_read(args.file), args.edge))
    return 0


def cmd_split_v(args):
    _emit(split_vertex(_read(args.file), args.a, args.b))
    return 0


def cmd_hom(args):
    a, b = _read(args.a), _read(args.b)
    h = hom_exists(a, b)
    if h is None:
        return 1
    if args.witness:
        for line in h.epi.witness_lines():
            print(line)
    return 0


def cmd_iso(args):
    return 0 if isomorphic(_read(args.a), _read(args.b)) else 1


def cmd_apply(args):
    m = _read(args.file)
    with open(args.witness, "r", encoding="ascii") as fh:
        steps = [parse_step(ln) for ln in fh.read().splitlines() if ln.strip()]
    _emit(apply_epimorphism(m, steps).image)
    return 0


def cmd_circuits(args):
    m = _read(args.file)
    for kappa in enumerate_circuits(m, args.max_len):
        if not is_non_self_intersecting(m, kappa):
            continue
        cl = classify_circuit(m, kappa)
        if args.prefacial and not cl.prefacial:
            continue
        print(",".join(str(c) for c in kappa))
    return 0


def cmd_cut(args):
    m = _read(args.file)
    kappa = tuple(int(x) for x in args.circuit.split(","))
    cut = cut_around(m, kappa)
    print(classify_circuit(m, kappa).label(), file=sys.stderr)
    _emit(cut.cut_map)
    return 0


def cmd_core(args):
    m = _read(args.file)
    if args.oracle:
        _emit(core_oracle(m))
        return 0
    c, h = core(m)
    _emit(c)
    if args.witness:
        for line in h.epi.witness_lines():
            print(line, file=sys.stderr)
    return 0


def cmd_is_core(args):
    m = _read(args.file)
    ok, viol = is_core(m, args.max_len)
    if ok:
        return 0
    if viol is not None:
        kappa, z = viol
        print(f"violating circuit: {','.join(str(c) for c in kappa)} face: {z}")
    return 1


def _parse_make(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "cycle":
        return cycle_map(int(rest))
    if kind == "bouquet":
        tokens = rest.split(",")
        visits = []
        twisted = set()
        for t in tokens:
            if t.endswith("t"):
                visits.append(int(t[:-1]))
                twisted.add(int(t[:-1]))
            else:
                visits.append(int(t))
        return bouquet(visits, twisted)
    if kind == "canonical":
        which, _, g = rest.partition(":")
        if which == "or":
            return canonical_orientable(int(g))
        if which == "nor":
            return canonical_nonorientable(int(g))
        raise MapError(f"unknown canonical kind {which!r}")
    if kind == "theta":
        i, j = rest.split(",")
        return theta_map(int(i), int(j))
    raise MapError(f"unknown family {spec!r}")


def cmd_make(args):
    if args.spec.startswith("antichain:"):
        n, k = args.spec.split(":", 1)[1].split(",")
        b, members = antichain_gadget(int(n), int(k))
        if not args.out_dir:
            print("antichain families need --out-dir", file=sys.stderr)
            return 2
        import os

        os.makedirs(args.out_dir, exist_ok=True)
        cmapio.write_path(os.path.join(args.out_dir, "B.cmap"), b)
        for i, a in enumerate(members, 1):
            cmapio.write_path(os.path.join(args.out_dir, f"A{i}.cmap"), a)
        print(f"wrote B.cmap and A1..A{len(members)}.cmap to {args.out_dir}")
        return 0
    _emit(_parse_make(args.spec))
    return 0


def cmd_enumerate(args):
    maps = enumerate_maps(args.edges, args.sg, args.connected)
    strata = {}
    for m in maps:
        b = invariants(m)
        key = (b.sg, b.k == 1)
        strata[key] = strata.get(key, 0) + 1
        if args.list:
            pairs = ";".join(f"{a},{b2}" for a, b2 in m.alpha1_pairs())
            print(f"sg={b.sg} k={b.k} alpha1={pairs}")
    for (sg, conn), count in sorted(strata.items()):
        tag = "connected" if conn else "disconnected"
        print(f"# sg={sg} {tag}: {count}")
    print(f"# total classes: {len(maps)}")
    return 0


def cmd_poset(args):
    cat = catalog(args.edges, args.sg, connected_only=True)
    p = build_core_poset(cat)
    if args.dot:
        with open(args.dot, "w", encoding="ascii") as fh:
            fh.write(export_dot(p))
    if args.json:
        with open(args.json, "w", encoding="ascii") as fh:
            fh.write(export_json(p))
    from .poset import is_connected_poset

    print(f"nodes={len(p.nodes)} covers={len(p.covers)} connected={is_connected_poset(p)}")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="tuttemaps", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("show", help="print the invariant bundle")
    p.add_argument("file")
    p.set_defaults(fn=cmd_show)

    p = sub.add_parser("classify", help="edge types, one line per edge")
    p.add_argument("file")
    p.set_defaults(fn=cmd_classify)

    for name, fn in (("delete", cmd_delete), ("contract", cmd_contract)):
        p = sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("edge", type=int)
        p.set_defaults(fn=fn)

    p = sub.add_parser("glue-v", help="glue the vertices of two crosses")
    p.add_argument("file")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(fn=cmd_glue_v)

    p = sub.add_parser("glue-e", help="glue a duplicate pair by witness cross")
    p.add_argument("file")
    p.add_argument("witness", type=int)
    p.set_defaults(fn=cmd_glue_e)

    p = sub.add_parser("split-e", help="split an edge, adding a 2-face")
    p.add_argument("file")
    p.add_argument("edge", type=int)
    p.set_defaults(fn=cmd_split_e)

    p = sub.add_parser("split-v", help="split a vertex through two crosses")
    p.add_argument("file")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(fn=cmd_split_v)

    p = sub.add_parser("hom", help="exit 0 iff a homomorphism exists")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(fn=cmd_hom)

    p = sub.add_parser("iso", help="exit 0 iff isomorphic")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("apply", help="replay a witness file of GV/ID/GE lines")
    p.add_argument("file")
    p.add_argument("witness")
    p.set_defaults(fn=cmd_apply)

    p = sub.add_parser("circuits", help="list circuits as cross id lists")
    p.add_argument("file")
    p.add_argument("--prefacial", action="store_true")
    p.add_argument("--max-len", type=int, default=None)
    p.set_defaults(fn=cmd_circuits)

    p = sub.add_parser("cut", help="cut around a circuit")
    p.add_argument("file")
    p.add_argument("--circuit", required=True)
    p.set_defaults(fn=cmd_cut)

    p = sub.add_parser("core", help="compute the core")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(fn=cmd_core)

    p = sub.add_parser("is-core", help="exit 0 iff the map is a core")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None)
    p.set_defaults(fn=cmd_is_core)

    p = sub.add_parser("make", help="build a named family member")
    p.add_argument("spec")
    p.add_argument("--out-dir")
    p.set_defaults(fn=cmd_make)

    p = sub.add_parser("enumerate", help="classes with a given edge count")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--sg", type=int, default=None)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("poset", help="core poset over the catalog up to a size")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--sg", type=int, default=0)
    p.add_argument("--dot")
    p.add_argument("--json")
    p.set_defaults(fn=cmd_poset)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except MapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1 if args.cmd in ("glue-v", "glue-e", "split-e", "split-v") else 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
