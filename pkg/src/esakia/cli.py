"""Command-line front end.

Every verb prints a :class:`Report` (one ``PASS``/``FAIL`` line per check,
then an overall line) except ``dualize`` and ``enumerate``, which print
structure files.  Exit status: 0 all checks pass, 1 some check fails,
2 unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from importlib import resources

from . import algebra as al
from . import brouwerian as brw
from . import catalog
from . import duality as du
from . import fan
from . import io
from . import morphisms as mor
from . import poset as po
from . import recheck
from .algebra import AlgHom, FinLattice, MeetSemilatticeView
from .errors import BoundExceeded, StructureError
from .fan import FanSpace
from .generators import random_maps
from .morphisms import FanMap
from .poset import FinPoset, PosetMap, bits
from .report import Report

DEFAULT_SEED = 20240601
SHORT_NAMES = {"collapse": "f1", "interleave": "f2", "start_and_limit": "f3", "point_to_limit": "f4"}


class Aggregate:
    """Fold many per-case reports into one line per check id."""

    def __init__(self):
        self.counts: dict[str, int] = {}
        self.first_failure: dict[str, object] = {}

    def add(self, report: Report, case: str):
        for c in report.checks:
            self.counts[c.id] = self.counts.get(c.id, 0) + 1
            if not c.passed and c.id not in self.first_failure:
                self.first_failure[c.id] = {"case": case, "witness": c.witness}

    def add_check(self, id: str, passed: bool, case: str, witness=None):
        r = Report()
        r.add(id, passed, witness)
        self.add(r, case)

    def into(self, out: Report, prefix: str = ""):
        for id in self.counts:
            bad = self.first_failure.get(id)
            w = {"cases": self.counts[id]}
            if bad is not None:
                w["first_failure"] = bad
            out.add(prefix + id, bad is None, w)


# check ------------------------------------------------------------------------------

def check_fanspace(X: FanSpace, depth: int, verify: bool) -> Report:
    r = Report()
    v = fan.validate(X, depth)
    r.add("priestley", v.priestley, v.certificates.get("priestley"))
    r.add("esakia.downsets", v.esakia_routes[0] and v.priestley, v.certificates.get("esakia_downset"))
    r.add("esakia.implication", v.esakia_routes[1] and v.priestley, v.certificates.get("esakia_implication"))
    r.add("esakia.routes-agree", v.routes_agree, {"downsets": v.esakia_routes[0], "implication": v.esakia_routes[1]})
    if verify and not v.esakia_routes[0]:
        C = fan.esakia_failure_by_downsets(X, depth)
        r.add("recheck.esakia.downsets", recheck.downset_not_clopen(X, C), {"clopen": C.describe()})
    return r


def check_fanmap(f: FanMap, depth: int) -> Report:
    r = Report()
    v = mor.classify(f, depth, strict=False)
    r.add("containments", not v.violations(), v.violations() or None)
    r.extend(mor.preimage_hom_check(f, depth), prefix="algebra.")
    return r


def check_lattice(A: FinLattice) -> Report:
    r = Report()
    r.extend(du.check_triangle_dl(A))
    if al.is_distributive(A):
        view = du.FrameView(du.ideal_frame(A).lattice)
        r.add("heyting-frame<->heyting-algebra", du.is_heyting_frame(view) == al.is_heyting_algebra(A),
              {"heyting_frame": du.is_heyting_frame(view), "heyting_algebra": al.is_heyting_algebra(A)})
    return r


def check_hom(h: AlgHom) -> Report:
    r = Report()
    dl = al.is_dl_hom(h)
    r.add("dl-hom", dl, None if dl else al.hom_violation(h, "dl"))
    if not dl:
        return r
    r.extend(du.naturality_squares(h))
    hs = du.h_star(h)
    K = sorted(du.FrameView(hs.dom).compact)
    compact = du.preserves_compact_implication(hs, K) is None
    r.add("ha-hom<->h*-preserves-implication", al.is_ha_hom(h) == compact,
          {"ha_hom": al.is_ha_hom(h), "h_star": compact})
    R = brw.dual_relation(h)
    ge = brw.is_ge_morphism(R)
    if al.is_heyting_algebra(h.dom) and al.is_heyting_algebra(h.cod):
        imp = al.is_brw_semilattice_hom(h)
        r.add("ge(R_h)<->preserves-implication", ge == imp, {"ge": ge, "implication": imp})
    return r


def check_posetmap(f: PosetMap) -> Report:
    r = Report()
    op = po.is_order_preserving(f)
    r.add("order-preserving", op, po.order_violation(f))
    if op:
        pm = po.is_p_morphism(f)
        pre = du.preimage_hom(f)
        ha = pre is not None and al.is_ha_hom(pre)
        r.add("p-morphism<->preimage-heyting", pm == ha, {"p_morphism": pm, "heyting": ha})
    return r


def check_poset(P: FinPoset) -> Report:
    r = Report()
    u = du.space_unit(P)
    r.add("pf(ClopUp(P))~P", du.is_poset_iso(u), list(u.assignment))
    return r


def check_pgspace(X) -> Report:
    r = brw.pgps_report(X)
    w = brw.pges_failure(X)
    r.add("pges", w is None, w)
    return r


def check_relation(R) -> Report:
    r = Report()
    gp = brw.gp_failure(R)
    r.add("gp-morphism", gp is None, gp)
    if gp is None:
        ge = brw.ge_failure(R)
        r.add("ge-morphism", ge is None, ge)
    return r


def check_structure(obj, args) -> Report:
    if isinstance(obj, FanSpace):
        return check_fanspace(obj, args.basis_depth, args.verify_witnesses)
    if isinstance(obj, FanMap):
        return check_fanmap(obj, args.basis_depth)
    if isinstance(obj, MeetSemilatticeView):
        return brw.check_triangle_brw(obj)
    if isinstance(obj, FinLattice):
        return check_lattice(obj)
    if isinstance(obj, AlgHom):
        return check_hom(obj)
    if isinstance(obj, PosetMap):
        return check_posetmap(obj)
    if isinstance(obj, FinPoset):
        return check_poset(obj)
    if isinstance(obj, brw.PointedGenSpace):
        return check_pgspace(obj)
    if isinstance(obj, brw.GenRelation):
        return check_relation(obj)
    raise StructureError(f"nothing to check for {type(obj).__name__}")


def fuzz_report(count: int, seed: int, depth: int, verify: bool) -> Report:
    """Classify ``count`` seeded random maps; containments must hold for every verdict."""
    agg = Aggregate()
    tally = {k: 0 for k in mor.FLAGS}
    for k, f in enumerate(random_maps(seed, count)):
        v = mor.classify(f, depth, strict=False)
        for flag, val in v.flags().items():
            tally[flag] += val
        agg.add_check("containments", not v.violations(), f"map[{k}]", v.violations() or None)
        if verify:
            for flag, w in sorted(v.witnesses.items()):
                agg.add_check("recheck." + flag, recheck.confirms(f, flag, w, v.witnesses), f"map[{k}]")
    r = Report()
    agg.into(r, "fuzz.")
    r.add("fuzz.flag-counts", True, tally)
    return r


def cmd_check(args) -> Report:
    r = Report()
    targets = []
    for kind, paths in (
        ("fanspace", args.fanspace),
        ("fanmap", args.map),
        ("semilattice", args.brouwerian),
        ("relation", args.relation),
    ):
        targets.extend((kind, p) for p in paths or ())
    targets.extend((None, p) for p in args.files)
    if not targets and not args.fuzz:
        raise StructureError("nothing to check: give a file or --fuzz N")
    objs = [(p, io.load(p, kind)) for kind, p in targets]
    for p, obj in objs:
        prefix = f"{os.path.basename(p)}." if len(objs) > 1 else ""
        r.extend(check_structure(obj, args), prefix=prefix)
    if args.fuzz:
        r.extend(fuzz_report(args.fuzz, args.seed, args.basis_depth, args.verify_witnesses))
    return r


# classify ---------------------------------------------------------------------------

def classify_report(f: FanMap, depth: int, verify: bool, prefix: str = "") -> Report:
    r = Report()
    v = mor.classify(f, depth, strict=False)
    for flag in mor.FLAGS:
        r.add(prefix + flag, getattr(v, flag), v.witnesses.get(flag))
    so = mor.is_spectral_open(f, depth)
    r.add(prefix + "spectral_open", so, None)
    if verify:
        for flag in mor.FLAGS:
            if flag in v.witnesses:
                r.add(prefix + "recheck." + flag, recheck.confirms(f, flag, v.witnesses[flag], v.witnesses))
    return r


def cmd_classify(args) -> Report:
    r = Report()
    paths = list(args.map or ()) + list(args.files)
    if not paths:
        raise StructureError("classify needs --map FILE")
    for p in paths:
        f = io.load(p, "fanmap")
        prefix = f"{os.path.basename(p)}." if len(paths) > 1 else ""
        r.extend(classify_report(f, args.basis_depth, args.verify_witnesses), prefix=prefix)
    return r


# replicate-paper --------------------------------------------------------------------

def replicate_report(depth: int = 1, verify: bool = False) -> Report:
    """The worked examples: expected space verdicts and the morphism flag table."""
    r = Report()
    for name, (pri, esa) in catalog.EXPECTED_SPACES.items():
        v = fan.validate(catalog.SPACES[name](), depth)
        r.add(f"space.{name}.priestley", v.priestley == pri, {"expected": pri, "got": v.priestley})
        r.add(f"space.{name}.esakia", v.esakia == esa, {"expected": esa, "got": v.esakia})
        r.add(f"space.{name}.routes-agree", v.routes_agree, {"downsets": v.esakia_routes[0], "implication": v.esakia_routes[1]})
    for name, expected in catalog.GOLDEN.items():
        f = catalog.MAPS[name]()
        tag = f"{SHORT_NAMES[name]}({name})"
        v = mor.classify(f, depth)
        got = dict(v.flags(), spectral_open=mor.is_spectral_open(f, depth))
        for flag, want in expected.items():
            r.add(f"{tag}.{flag}", got[flag] == want, {"expected": want, "got": got[flag]})
        if verify:
            for flag, w in sorted(v.witnesses.items()):
                if flag in expected:
                    r.add(f"{tag}.recheck.{flag}", recheck.confirms(f, flag, w, v.witnesses))
    return r


def cmd_replicate(args) -> Report:
    return replicate_report(args.basis_depth, args.verify_witnesses)


# roundtrip --------------------------------------------------------------------------

def bundled_paths() -> list[str]:
    root = resources.files("esakia") / "data"
    return sorted(str(root / n) for n in os.listdir(str(root)) if n.endswith(".json"))


def io_roundtrip_report() -> Report:
    r = Report()
    for p in bundled_paths():
        with open(p, encoding="utf-8") as fh:
            text = fh.read()
        again = io.dump(io.parse(io.loads(text)))
        r.add(f"io.{os.path.basename(p)}", again == text, None)
    return r


def dl_roundtrip_report(max_size: int, hom_size: int = 3) -> Report:
    agg = Aggregate()
    lattices = [(P, al.downset_lattice(P)) for P in po.posets_up_to(max_size)]
    for P, A in lattices:
        agg.add(du.check_triangle_dl(A), f"D({P.covers()})")
    small = [(P, A) for P, A in lattices if P.size <= min(hom_size, max_size)]
    for (P, A), (Q, B) in itertools.product(small, repeat=2):
        for h in al.dl_homs(A, B):
            agg.add(du.naturality_squares(h), f"D({P.covers()})->D({Q.covers()}) {list(h.assignment)}")
    r = Report()
    agg.into(r, "dl.")
    return r


def brw_roundtrip_report(max_size: int, hom_size: int = 4) -> Report:
    agg = Aggregate()
    views = brw.views_up_to(max_size)
    for V in views:
        agg.add(brw.check_triangle_brw(V), f"{V.base!r}")
    small = [V.base for V in views if V.size <= min(hom_size, max_size)]
    homs = {(A, B): list(al.ms_homs(A, B)) for A in small for B in small}
    for A, B, C in itertools.product(small, repeat=3):
        for h in homs[(A, B)]:
            for g in homs[(B, C)]:
                w = brw.functoriality_failure(h, g)
                agg.add_check("functoriality", w is None, f"{list(h.assignment)} then {list(g.assignment)}", w)
    r = Report()
    agg.into(r, "brw.")
    return r


def cmd_roundtrip(args) -> Report:
    r = Report()
    r.extend(io_roundtrip_report())
    if args.brw:
        r.extend(brw_roundtrip_report(args.max_size))
    else:
        r.extend(dl_roundtrip_report(args.max_size))
    return r


# dualize ----------------------------------------------------------------------------

def _named_poset(P: FinPoset, masks) -> FinPoset:
    names = tuple("{" + ",".join(map(str, bits(m))) + "}" for m in masks)
    return FinPoset(P.size, P.up, names)


def _masks_lattice(masks) -> FinLattice:
    L = al.inclusion_lattice(list(masks))
    return FinLattice(_named_poset(L.order, masks), L.meet, L.join, L.bottom, L.top)


DUALS = ("pf", "clopup", "ideals", "filters", "points", "spectrum", "admissibles")


def dualize(obj, target: str):
    if target == "pf":
        if isinstance(obj, AlgHom):
            return du.dual_of_hom(obj)
        A = _as_lattice(obj)
        X = du.prime_filters(A)
        return _named_poset(X.poset, X.masks)
    if target == "clopup":
        if isinstance(obj, PosetMap):
            h = du.preimage_hom(obj)
            if h is None:
                raise StructureError("map is not order preserving")
            return h
        if not isinstance(obj, FinPoset):
            raise StructureError("--clopup needs a poset or poset map")
        return _masks_lattice(po.upset_masks(obj))
    if target == "ideals":
        if isinstance(obj, AlgHom):
            return du.h_star(obj)
        J = du.ideal_frame(_as_lattice(obj)).lattice
        return _masks_lattice([po.to_mask(lab) for lab in J.labels])
    if target == "filters":
        if isinstance(obj, AlgHom):
            return brw.f_of_hom(obj)
        return _masks_lattice(brw.filter_frame(MeetSemilatticeView(_as_lattice(obj))).filters)
    if target == "points":
        L = du.FrameView(_as_lattice(obj))
        return _named_poset(du.points_poset(L), [po.to_mask(P) for P in L.points])
    if target == "spectrum":
        if isinstance(obj, AlgHom):
            return brw.dual_relation(obj)
        return brw.pointed_spectrum(MeetSemilatticeView(_as_lattice(obj)))
    if target == "admissibles":
        if not isinstance(obj, brw.PointedGenSpace):
            raise StructureError("--admissibles needs a pgspace")
        return _masks_lattice(sorted(obj.admissibles, key=lambda m: (bin(m).count("1"), m)))
    raise StructureError(f"unknown dual {target!r}")


def _as_lattice(obj) -> FinLattice:
    if isinstance(obj, MeetSemilatticeView):
        return obj.base
    if isinstance(obj, FinLattice):
        return obj
    raise StructureError(f"expected a lattice, got {type(obj).__name__}")


def cmd_dualize(args) -> str:
    chosen = [d for d in DUALS if getattr(args, d)]
    if len(chosen) != 1:
        raise StructureError("choose exactly one of " + ", ".join("--" + d for d in DUALS))
    return io.dump(dualize(io.load(args.file), chosen[0]))


# enumerate --------------------------------------------------------------------------

KINDS = ("posets", "lattices", "distributive-lattices")


def enumerate_structures(kind: str, n: int):
    if kind == "posets":
        return list(po.enumerate_posets(n))
    if kind == "lattices":
        return list(al.enumerate_lattices(n))
    return list(al.enumerate_lattices(n, distributive_only=True))


def cmd_enumerate(args) -> str:
    items = enumerate_structures(args.kind, args.n)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for k, s in enumerate(items):
            with open(os.path.join(args.out_dir, f"{args.kind}-{args.n}-{k:04d}.json"), "w", encoding="utf-8") as fh:
                fh.write(io.dump(s))
        return f"{len(items)} files written to {args.out_dir}\n"
    return "".join(json.dumps(io.to_json(s), sort_keys=True) + "\n" for s in items)


# argument parsing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--max-size", type=int, default=4)
    common.add_argument("--basis-depth", type=int, default=1, help="fresh indices per tail in the shape basis")
    common.add_argument("--verify-witnesses", action="store_true", help="re-evaluate every failure witness pointwise")

    p = argparse.ArgumentParser(prog="esakia", description="Finite and fan-space Esakia duality checks.")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check", parents=[common], help="validate structure files")
    c.add_argument("files", nargs="*")
    c.add_argument("--fanspace", action="append")
    c.add_argument("--map", action="append")
    c.add_argument("--brouwerian", action="append")
    c.add_argument("--relation", action="append")
    c.add_argument("--fuzz", type=int, default=0, metavar="N", help="also classify N seeded random fan maps")

    k = sub.add_parser("classify", parents=[common], help="five-flag verdict of a fan map")
    k.add_argument("files", nargs="*")
    k.add_argument("--map", action="append")

    sub.add_parser("replicate-paper", parents=[common], help="worked examples against their expected verdicts")

    rt = sub.add_parser("roundtrip", parents=[common], help="exhaustive duality round trips")
    rt.add_argument("--brw", action="store_true", help="Brouwerian side instead of distributive lattices")

    d = sub.add_parser("dualize", parents=[common], help="print the dual structure")
    d.add_argument("file")
    for name in DUALS:
        d.add_argument("--" + name, action="store_true")

    e = sub.add_parser("enumerate", parents=[common], help="stream structures up to isomorphism")
    e.add_argument("kind", choices=KINDS)
    e.add_argument("n", type=int)
    e.add_argument("--out-dir")
    return p


def run(argv=None) -> tuple[int, str]:
    """Parse, execute and render; returns (exit status, output text)."""
    args = build_parser().parse_args(argv)
    if args.max_size < 0 or args.max_size > po.MAX_ENUMERATION_SIZE + 1:
        raise StructureError(f"--max-size must be between 0 and {po.MAX_ENUMERATION_SIZE + 1}")
    if args.basis_depth < 1:
        raise StructureError("--basis-depth must be at least 1")
    if args.verb == "dualize":
        return 0, cmd_dualize(args)
    if args.verb == "enumerate":
        if not 0 <= args.n <= po.MAX_ENUMERATION_SIZE:
            raise StructureError(f"n must be between 0 and {po.MAX_ENUMERATION_SIZE}")
        return 0, cmd_enumerate(args)
    handlers = {"check": cmd_check, "classify": cmd_classify, "replicate-paper": cmd_replicate, "roundtrip": cmd_roundtrip}
    report = handlers[args.verb](args)
    return report.exit_status, report.render(args.format)


def main(argv=None) -> int:
    try:
        status, text = run(argv)
    except (StructureError, BoundExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
