"""Command-line interface.

Every subcommand is deterministic given its flags and seed (default
seed from the ``UNIMAP_SEED`` environment variable).  Output files are
overwritten atomically.  Exit codes: 0 on success, 1 when a check or
validation fails (the offending object is serialized alongside), 2 on
usage errors.
"""

import argparse
import json
import math
import os
import sys
import tempfile

from .errors import MapError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".unimap-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text, path=None):
    if path:
        _atomic_write(path, text)
    else:
        sys.stdout.write(text)


def _default_seed():
    return int(os.environ.get("UNIMAP_SEED", "0"))


def cmd_validate(args):
    from .maps import (genus, is_unicellular, load_map, map_to_dict,
                       vertices)
    from . import permutations as perm
    try:
        m, root = load_map(args.map)
    except (MapError, KeyError, ValueError, OSError) as exc:
        print(f"INVALID: {exc}")
        return EXIT_FAIL
    faces = perm.cycle_count(m.gamma)
    print(f"valid map: n={m.n} genus={genus(m)} faces={faces} "
          f"vertices={len(vertices(m))} unicellular={is_unicellular(m)} "
          f"root={root}")
    return EXIT_OK


def cmd_enumerate(args):
    from .enumeration import (CountTable, count_dominant, count_unicellular,
                              enum_schemes, enum_trees_with_triples)
    table = CountTable()
    if args.schemes:
        from . import permutations as perm
        total = trivalent = 0
        for _, s in enum_schemes(args.g, args.budget):
            total += 1
            if all(len(c) == 3 for c in perm.cycles(s.map.beta)):
                trivalent += 1
        table.add(args.g, "", total, "brute-force-schemes")
        table.add(args.g, "", trivalent, "brute-force-trivalent-schemes")
    elif args.trees_with_triples:
        c = sum(1 for _ in enum_trees_with_triples(args.g, args.n, args.budget))
        table.add(args.g, args.n, c, "brute-force-trees")
    elif args.dominant:
        table.add(args.g, args.n, count_dominant(args.g, args.n, args.budget),
                  "brute-force")
    else:
        table.add(args.g, args.n,
                  count_unicellular(args.g, args.n, args.budget),
                  "brute-force")
    _emit(table.to_csv(), args.output)
    return EXIT_OK


def cmd_open(args):
    from .bijection import (OpeningSequence, open_phi, opening_sequences,
                            tree_with_triples_to_dict)
    from .maps import load_map
    m, _ = load_map(args.map)
    outputs = []
    if args.all:
        seqs = list(opening_sequences(m))
    elif args.sequence:
        nodes = tuple(int(x) for x in args.sequence.split(","))
        seqs = [OpeningSequence(nodes=nodes)]
    else:
        print("usage error: need --sequence or --all", file=sys.stderr)
        return EXIT_USAGE
    for seq in seqs:
        tc = open_phi(m, seq)
        d = tree_with_triples_to_dict(tc)
        d["sequence"] = list(seq.nodes)
        outputs.append(d)
    text = "\n".join(json.dumps(d) for d in outputs) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_close(args):
    from .bijection import close_psi, tree_with_triples_from_dict
    from .maps import map_to_dict
    with open(args.tree) as fh:
        tc = tree_with_triples_from_dict(json.load(fh))
    m, seq = close_psi(tc)
    d = map_to_dict(m.map, root=1)
    d["sequence"] = list(seq.nodes)
    _emit(json.dumps(d) + "\n", args.output)
    return EXIT_OK


def _check_surgery(g, nmax):
    from .enumeration import enum_unicellular
    from .scheme import decompose, recompose
    for n in range(2 * g, nmax + 1):
        for m in enum_unicellular(g, n):
            d = decompose(m.map)
            if recompose(d).map != m.map:
                return m
    return None


def _check_bijection(g, nmax):
    from .bijection import (close_psi, intertwined_nodes, open_phi,
                            opening_sequences)
    from .enumeration import enum_dominant
    for n in range(2 * g, nmax + 1):
        for m in enum_dominant(g, n):
            if len(intertwined_nodes(m.map)) != 2 * g:
                return m
            for seq in opening_sequences(m.map):
                tc = open_phi(m.map, seq)
                m2, seq2 = close_psi(tc)
                if m2.map != m.map or seq2.nodes != seq.nodes:
                    return m
    return None


def _check_counts(g, nmax):
    from .enumeration import (count_dominant, count_unicellular,
                              enum_trees_with_triples, marked_trees)
    for n in range(2 * g, nmax + 1):
        trees = sum(1 for _ in enum_trees_with_triples(g, n))
        dom = count_dominant(g, n)
        if trees != 2 ** g * math.factorial(g) * dom:
            return (g, n, trees, dom)
    return None


def _check_labelled(g, nmax):
    import itertools

    from .bijection import opening_sequences
    from .enumeration import enum_dominant
    from .labelled import Labelling, labelled_phi, labelled_psi, \
        validate_labelling
    from .maps import vertex_of, vertices
    for n in range(2 * g, nmax + 1):
        for m in enum_dominant(g, n):
            vs = vertices(m.map)
            rv = vertex_of(m.map, 1)
            for vals in itertools.product((-1, 0, 1), repeat=len(vs)):
                lab = dict(zip(vs, vals))
                if lab[rv] != 0:
                    continue
                try:
                    validate_labelling(m.map, Labelling(values=lab))
                except MapError:
                    continue
                for seq in opening_sequences(m.map):
                    wlt = labelled_phi(m.map, Labelling(values=lab), seq)
                    m2, seq2, lab2 = labelled_psi(wlt)
                    if (m2.map != m.map or seq2.nodes != seq.nodes
                            or lab2.values != lab):
                        return m
    return None


def _check_series(g, nmax):
    from .labelled import series_checks
    res = series_checks(max_order=max(nmax, 8), brute_order=min(nmax, 6))
    bad = [k for k, v in res.items() if not v]
    return bad or None


def cmd_check(args):
    runners = {
        "surgery": _check_surgery,
        "bijection": _check_bijection,
        "counts": _check_counts,
        "labelled": _check_labelled,
        "series": _check_series,
    }
    bad = runners[args.suite](args.g, args.nmax)
    if bad is None:
        print(f"check {args.suite} g={args.g} nmax={args.nmax}: PASS")
        return EXIT_OK
    from .maps import CombMap, map_to_dict
    print(f"check {args.suite} g={args.g} nmax={args.nmax}: FAIL")
    if hasattr(bad, "map") and isinstance(bad.map, CombMap):
        dump = json.dumps(map_to_dict(bad.map))
    else:
        dump = json.dumps(repr(bad))
    out = args.output or f"counterexample-{args.suite}.json"
    _atomic_write(out, dump + "\n")
    print(f"counterexample written to {out}")
    return EXIT_FAIL


def cmd_sample(args):
    from .bijection import tree_with_triples_to_dict
    from .maps import map_to_dict
    from .stats import (SeededRng, sample_dominant_map, sample_labelled_tree,
                        sample_plane_tree, sample_well_labelled)
    rng = SeededRng(args.seed)
    rows = []
    for _ in range(args.count):
        if args.kind == "tree":
            rows.append(map_to_dict(sample_plane_tree(args.n, rng), root=1))
        elif args.kind == "labelled-tree":
            lt = sample_labelled_tree(args.n, rng)
            d = map_to_dict(lt.tree, root=1)
            d["increments"] = list(lt.increments)
            rows.append(d)
        elif args.kind == "dominant-map":
            m = sample_dominant_map(args.g, args.n, rng)
            rows.append(map_to_dict(m.map, root=1))
        else:  # well-labelled
            wlt = sample_well_labelled(args.g, args.n, rng)
            d = tree_with_triples_to_dict(wlt.base)
            d["increments"] = list(wlt.labelled.increments)
            rows.append(d)
    text = "\n".join(json.dumps(d) for d in rows) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_estimate_tg(args):
    from .stats import (Estimate, SeededRng, estimate_tg_moment,
                        estimate_tg_probability)
    rng = SeededRng(args.seed)
    fn = estimate_tg_moment if args.method == "moment" \
        else estimate_tg_probability
    est = fn(args.g, args.n, args.samples, rng)
    text = (Estimate.csv_header() + f",seed\n{est.csv_row()},{args.seed}\n")
    _emit(text, args.output)
    return EXIT_OK


def cmd_profile(args):
    from .stats import SeededRng, profile_statistics
    rng = SeededRng(args.seed)
    pm, radii = profile_statistics(args.g, args.n, args.samples, rng)
    lines = pm.csv_rows()
    lines.append("")
    lines.append("radius")
    if args.bins:
        lo, hi = min(radii), max(radii) + 1e-9
        width = (hi - lo) / args.bins
        counts = [0] * args.bins
        for r in radii:
            counts[min(int((r - lo) / width), args.bins - 1)] += 1
        lines[-1] = "bin_left,count"
        for i, c in enumerate(counts):
            lines.append(f"{lo + i * width!r},{c}")
    else:
        for r in radii:
            lines.append(repr(r))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="unimap",
        description="Unicellular maps: surgery, bijections, enumeration, "
                    "sampling.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--output", "-o", default=None,
                        help="output file (default: stdout)")

    sp = sub.add_parser("validate", help="validate a map file")
    sp.add_argument("map")
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("enumerate", help="exhaustive counts as CSV")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--dominant", action="store_true")
    sp.add_argument("--schemes", action="store_true")
    sp.add_argument("--trees-with-triples", action="store_true")
    sp.add_argument("--budget", type=int, default=10 ** 8)
    add_common(sp)
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser("open", help="open a dominant map into trees")
    sp.add_argument("map")
    sp.add_argument("--sequence", default=None,
                    help="comma separated opening sequence v1,...,vg")
    sp.add_argument("--all", action="store_true",
                    help="open along every sequence")
    add_common(sp)
    sp.set_defaults(fn=cmd_open)

    sp = sub.add_parser("close", help="close a tree-with-triples file")
    sp.add_argument("tree")
    add_common(sp)
    sp.set_defaults(fn=cmd_close)

    sp = sub.add_parser("check", help="run an exhaustive consistency suite")
    sp.add_argument("--suite", required=True,
                    choices=["surgery", "bijection", "counts", "labelled",
                             "series"])
    sp.add_argument("--g", type=int, default=1)
    sp.add_argument("--nmax", type=int, default=5)
    add_common(sp)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("sample", help="draw random objects as JSON lines")
    sp.add_argument("--kind", required=True,
                    choices=["tree", "labelled-tree", "dominant-map",
                             "well-labelled"])
    sp.add_argument("--g", type=int, default=1)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--seed", type=int, default=_default_seed())
    add_common(sp)
    sp.set_defaults(fn=cmd_sample)

    sp = sub.add_parser("estimate-tg", help="Monte-Carlo estimate of t_g")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--method", default="moment",
                    choices=["moment", "probability"])
    sp.add_argument("--seed", type=int, default=_default_seed())
    add_common(sp)
    sp.set_defaults(fn=cmd_estimate_tg)

    sp = sub.add_parser("profile", help="distance profile and radius CSV")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--bins", type=int, default=0)
    sp.add_argument("--seed", type=int, default=_default_seed())
    add_common(sp)
    sp.set_defaults(fn=cmd_profile)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except MapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, KeyError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
