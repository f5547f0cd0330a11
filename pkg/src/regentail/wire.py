"""JSON wire formats: group descriptors, elements, certificates, queries.

The formats are strict (unknown fields are rejected) so that scripted use
fails loudly rather than silently ignoring typos.  Rationals travel as
strings "p/q" (or bare integers); certificate envelopes carry the group,
the system name and the query alongside the certificate payload, which is
exactly what a replay needs.
"""

from __future__ import annotations

from fractions import Fraction

from .finsets import FinSubset
from .forcing import ComposeCertificate, TCertificate, UCertificate, Verdict
from .groups import ConeGroup, DiscreteGroup, DivisibilityGroup
from .numberring import CubicField
from .regularise import (
    ConeDecision,
    LorenzenBranch,
    LorenzenCertificate,
    PruferCertificate,
    replay_cone,
    replay_lorenzen,
    replay_prufer,
)
from .forcing import replay_compose, replay_t, replay_u
from .systems import DedekindSystem, MinimalSystem


class WireError(ValueError):
    pass


def _require_keys(obj, required, optional=(), where="object"):
    if not isinstance(obj, dict):
        raise WireError(f"{where}: expected a JSON object")
    missing = [k for k in required if k not in obj]
    if missing:
        raise WireError(f"{where}: missing field(s) {missing}")
    unknown = [k for k in obj if k not in required and k not in optional]
    if unknown:
        raise WireError(f"{where}: unknown field(s) {unknown}")


# -- groups ------------------------------------------------------------------


def group_to_json(g) -> dict:
    if isinstance(g, DiscreteGroup):
        return {"kind": "discrete-z"}
    if isinstance(g, ConeGroup):
        positives = [p if g.rank == 1 else list(p) for p in g.positives]
        return {"kind": "cone-zd", "rank": g.rank, "positives": positives}
    if isinstance(g, DivisibilityGroup):
        a0, a1, a2 = g.field.coeffs
        return {"kind": "divisibility", "min_poly": [a0, a1, a2, 1]}
    raise WireError(f"unsupported group {g!r}")


def group_from_json(obj):
    _require_keys(obj, ["kind"], ["rank", "positives", "min_poly"], "group")
    kind = obj["kind"]
    if kind == "discrete-z":
        _require_keys(obj, ["kind"], [], "group")
        return DiscreteGroup()
    if kind == "cone-zd":
        _require_keys(obj, ["kind", "rank", "positives"], [], "group")
        rank = obj["rank"]
        if not isinstance(rank, int) or rank < 1:
            raise WireError("group.rank must be a positive integer")
        positives = [p if rank == 1 else tuple(p) for p in obj["positives"]]
        return ConeGroup(rank, positives)
    if kind == "divisibility":
        _require_keys(obj, ["kind", "min_poly"], [], "group")
        poly = [int(c) for c in obj["min_poly"]]
        if len(poly) != 4 or poly[3] != 1:
            raise WireError("group.min_poly must be a monic cubic [a0, a1, a2, 1]")
        return DivisibilityGroup(CubicField(tuple(poly[:3])))
    raise WireError(f"unknown group kind {kind!r}")


# -- elements ----------------------------------------------------------------


def _frac_to_json(f: Fraction):
    return int(f) if f.denominator == 1 else str(f)


def _frac_from_json(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise WireError(f"rationals must be integers or 'p/q' strings, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise WireError(f"bad rational {v!r}: {exc}") from None
    raise WireError(f"bad rational {v!r}")


def element_to_json(g, el):
    if isinstance(g, ConeGroup):
        return el if g.rank == 1 else list(el)
    return [_frac_to_json(c) for c in el]


def element_from_json(g, obj):
    if isinstance(g, ConeGroup):
        if g.rank == 1:
            if isinstance(obj, bool) or not isinstance(obj, int):
                raise WireError(f"rank-1 elements are integers, got {obj!r}")
            return obj
        if not isinstance(obj, list) or len(obj) != g.rank:
            raise WireError(f"expected a vector of {g.rank} integers, got {obj!r}")
        return g.element(obj)
    if not isinstance(obj, list) or len(obj) != 3:
        raise WireError(f"field elements are triples of rationals, got {obj!r}")
    return g.element(tuple(_frac_from_json(c) for c in obj))


def subset_to_json(g, A: FinSubset):
    return [element_to_json(g, a) for a in A]


def subset_from_json(g, obj, where="subset"):
    if not isinstance(obj, list) or not obj:
        raise WireError(f"{where}: expected a nonempty list of elements")
    return FinSubset(element_from_json(g, e) for e in obj)


# -- certificates ------------------------------------------------------------


def certificate_to_json(g, cert, system_name=None) -> dict:
    if isinstance(cert, TCertificate):
        return {
            "op": "T",
            "x": element_to_json(g, cert.x),
            "k": cert.k,
            "chain": subset_to_json(g, cert.chain),
            "base_system": system_name,
        }
    if isinstance(cert, UCertificate):
        return {
            "op": "U",
            "x": element_to_json(g, cert.x),
            "k": [cert.pos.k, cert.neg.k],
            "chain": [subset_to_json(g, cert.pos.chain), subset_to_json(g, cert.neg.chain)],
            "base_system": system_name,
        }
    if isinstance(cert, ComposeCertificate):
        return {
            "op": "T*",
            "xs": [element_to_json(g, x) for x in cert.xs],
            "ks": list(cert.ks),
            "chain": subset_to_json(g, cert.chain),
            "base_system": system_name,
        }
    if isinstance(cert, LorenzenCertificate):
        return {
            "type": "lorenzen",
            "xs": [element_to_json(g, x) for x in cert.xs],
            "branches": [
                {"signs": list(br.signs), "ks": list(br.ks)} for br in cert.branches
            ],
        }
    if isinstance(cert, PruferCertificate):
        return {"type": "prufer", "B": subset_to_json(g, cert.witness)}
    if isinstance(cert, ConeDecision):
        if cert.positive:
            return {"type": "cone", "n": list(cert.coeffs), "m": list(cert.cone_coeffs)}
        return {"type": "cone-refutation", "lam": list(cert.functional)}
    raise WireError(f"unsupported certificate {cert!r}")


def certificate_from_json(g, obj):
    if not isinstance(obj, dict):
        raise WireError("certificate: expected a JSON object")
    if "op" in obj:
        op = obj["op"]
        if op == "T":
            _require_keys(obj, ["op", "x", "k", "chain"], ["base_system"], "T certificate")
            return TCertificate(
                x=element_from_json(g, obj["x"]),
                k=int(obj["k"]),
                chain=subset_from_json(g, obj["chain"], "chain"),
            )
        if op == "U":
            _require_keys(obj, ["op", "x", "k", "chain"], ["base_system"], "U certificate")
            ks = obj["k"]
            chains = obj["chain"]
            if not (isinstance(ks, list) and len(ks) == 2 and isinstance(chains, list)
                    and len(chains) == 2):
                raise WireError("U certificate: k and chain must be pairs")
            x = element_from_json(g, obj["x"])
            return UCertificate(
                x=x,
                pos=TCertificate(x=x, k=int(ks[0]), chain=subset_from_json(g, chains[0], "chain")),
                neg=TCertificate(x=g.neg(x), k=int(ks[1]), chain=subset_from_json(g, chains[1], "chain")),
            )
        if op == "T*":
            _require_keys(obj, ["op", "xs", "ks", "chain"], ["base_system"], "T* certificate")
            return ComposeCertificate(
                xs=tuple(element_from_json(g, x) for x in obj["xs"]),
                ks=tuple(int(k) for k in obj["ks"]),
                chain=subset_from_json(g, obj["chain"], "chain"),
            )
        raise WireError(f"unknown certificate op {op!r}")
    kind = obj.get("type")
    if kind == "lorenzen":
        _require_keys(obj, ["type", "xs", "branches"], [], "lorenzen certificate")
        branches = []
        for br in obj["branches"]:
            _require_keys(br, ["signs", "ks"], [], "lorenzen branch")
            branches.append(
                LorenzenBranch(signs=tuple(int(s) for s in br["signs"]),
                               ks=tuple(int(k) for k in br["ks"]))
            )
        return LorenzenCertificate(
            xs=tuple(element_from_json(g, x) for x in obj["xs"]),
            branches=tuple(branches),
        )
    if kind == "prufer":
        _require_keys(obj, ["type", "B"], [], "prufer certificate")
        return PruferCertificate(witness=subset_from_json(g, obj["B"], "B"))
    if kind == "cone":
        _require_keys(obj, ["type", "n", "m"], [], "cone certificate")
        return ConeDecision(positive=True,
                            coeffs=tuple(int(c) for c in obj["n"]),
                            cone_coeffs=tuple(int(c) for c in obj["m"]))
    if kind == "cone-refutation":
        _require_keys(obj, ["type", "lam"], [], "cone refutation")
        return ConeDecision(positive=False, functional=tuple(int(c) for c in obj["lam"]))
    raise WireError("certificate: missing 'op' or 'type' tag")


def verdict_to_json(g, verdict: Verdict, system_name=None) -> dict:
    out = {"status": verdict.status}
    if verdict.detail:
        out["detail"] = verdict.detail
    cert = verdict.certificate
    if cert is not None and not isinstance(cert, str):
        out["certificate"] = certificate_to_json(g, cert, system_name)
    return out


# -- certificate envelopes ----------------------------------------------------


def make_envelope(g, system_name, query: dict, cert) -> dict:
    return {
        "format": "regentail-certificate",
        "group": group_to_json(g),
        "system": system_name,
        "query": query,
        "certificate": certificate_to_json(g, cert, system_name),
    }


def system_from_name(name, g):
    if name == "sm":
        return MinimalSystem(g)
    if name == "dedekind":
        return DedekindSystem(g)
    raise WireError(f"unknown system {name!r} (expected 'sm' or 'dedekind')")


def verify_envelope(obj) -> tuple[bool, str]:
    """Replay a serialized certificate; returns (valid, message).

    Raises WireError on malformed input (as opposed to a well-formed but
    invalid certificate, which returns (False, reason)).
    """
    _require_keys(obj, ["format", "group", "system", "query", "certificate"], [], "envelope")
    if obj["format"] != "regentail-certificate":
        raise WireError("envelope: unknown format tag")
    g = group_from_json(obj["group"])
    query = obj["query"]
    cert = certificate_from_json(g, obj["certificate"])

    if isinstance(cert, ConeDecision):
        _require_keys(query, ["A"], [], "query")
        A = subset_from_json(g, query["A"], "A")
        if not isinstance(g, ConeGroup):
            raise WireError("cone certificates need a cone-zd group")
        ok = replay_cone(g, cert, A)
        return ok, "cone replay " + ("succeeded" if ok else "failed")

    system = system_from_name(obj["system"], g)
    if isinstance(cert, PruferCertificate):
        _require_keys(query, ["A"], [], "query")
        A = subset_from_json(g, query["A"], "A")
        ok = replay_prufer(system, cert, A)
        return ok, "prufer replay " + ("succeeded" if ok else "failed")

    _require_keys(query, ["A"], ["b", "B"], "query")
    A = subset_from_json(g, query["A"], "A")
    if "B" in query:
        target = subset_from_json(g, query["B"], "B")
    elif "b" in query:
        target = element_from_json(g, query["b"])
    else:
        raise WireError("query: needs 'b' or 'B'")

    if isinstance(cert, LorenzenCertificate):
        if isinstance(target, FinSubset):
            raise WireError("lorenzen certificates take a single conclusion 'b'")
        ok = replay_lorenzen(system, cert, A, target)
        branches = len(cert.branches)
        return ok, f"lorenzen replay over {branches} branch(es) " + ("succeeded" if ok else "failed")
    if isinstance(cert, TCertificate):
        ok = replay_t(system, cert, A, target)
        return ok, "T-chain replay " + ("succeeded" if ok else "failed")
    if isinstance(cert, UCertificate):
        if not replay_t(system, cert.pos, A, target):
            return False, "U replay failed on the T_{+x} branch"
        if cert.neg.x != g.neg(cert.x):
            return False, "U replay failed: negative branch forces the wrong element"
        if not replay_t(system, cert.neg, A, target):
            return False, "U replay failed on the T_{-x} branch"
        return True, "U replay succeeded"
    if isinstance(cert, ComposeCertificate):
        ok = replay_compose(system, cert, A, target)
        return ok, "composed chain replay " + ("succeeded" if ok else "failed")
    raise WireError(f"unsupported certificate {cert!r}")


# -- query files ---------------------------------------------------------------


QUERY_KINDS = ("entails", "force", "regularise", "prufer-check", "lcd")


def parse_budget(obj) -> tuple:
    from .forcing import Budget, DEFAULT_BUDGET

    if obj is None:
        return DEFAULT_BUDGET, ()
    _require_keys(obj, [], ["kMax", "nMax", "poolExtras"], "budget")
    k_max = obj.get("kMax", DEFAULT_BUDGET.k_max)
    n_max = obj.get("nMax", DEFAULT_BUDGET.n_max)
    if not isinstance(k_max, int) or not isinstance(n_max, int):
        raise WireError("budget: kMax and nMax must be integers")
    return Budget(k_max=k_max, n_max=n_max), tuple(obj.get("poolExtras", ()))


def parse_query_file(obj) -> dict:
    """Validate and normalize a query document; returns a dict with
    group, system name, kind, payload elements and budget."""
    _require_keys(obj, ["group", "system", "query"], ["budget"], "query file")
    g = group_from_json(obj["group"])
    system_name = obj["system"]
    if system_name not in ("sm", "dedekind"):
        raise WireError(f"unknown system {system_name!r}")
    budget, pool_extras = parse_budget(obj.get("budget"))
    pool_extras = tuple(element_from_json(g, x) for x in pool_extras)
    q = obj["query"]
    _require_keys(q, ["kind"], ["A", "B", "b", "x", "op"], "query")
    kind = q["kind"]
    if kind not in QUERY_KINDS:
        raise WireError(f"unknown query kind {kind!r}")
    out = {"group": g, "system": system_name, "kind": kind,
           "budget": budget, "pool_extras": pool_extras}
    if kind == "entails":
        _require_keys(q, ["kind", "A", "B"], [], "entails query")
        out["A"] = subset_from_json(g, q["A"], "A")
        out["B"] = subset_from_json(g, q["B"], "B")
    elif kind == "force":
        _require_keys(q, ["kind", "op", "x", "A"], ["b", "B"], "force query")
        if q["op"] not in ("T", "U"):
            raise WireError("force query: op must be 'T' or 'U'")
        out["op"] = q["op"]
        out["x"] = element_from_json(g, q["x"])
        out["A"] = subset_from_json(g, q["A"], "A")
        if "B" in q:
            out["target"] = subset_from_json(g, q["B"], "B")
        elif "b" in q:
            out["target"] = element_from_json(g, q["b"])
        else:
            raise WireError("force query: needs 'b' or 'B'")
    elif kind == "regularise":
        _require_keys(q, ["kind", "A", "b"], [], "regularise query")
        out["A"] = subset_from_json(g, q["A"], "A")
        out["b"] = element_from_json(g, q["b"])
    elif kind == "prufer-check":
        _require_keys(q, ["kind", "A", "B"], [], "prufer-check query")
        out["A"] = subset_from_json(g, q["A"], "A")
        out["B"] = subset_from_json(g, q["B"], "B")
    elif kind == "lcd":
        _require_keys(q, ["kind", "A"], [], "lcd query")
        if not isinstance(g, ConeGroup):
            raise WireError("lcd queries need a cone-zd group")
        out["A"] = subset_from_json(g, q["A"], "A")
    return out
