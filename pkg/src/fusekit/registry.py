"""Selector-string dispatch for every combination rule.

Each entry adapts one rule to a uniform call shape: a list of sources
plus a parameter dict.  Strictly binary rules declare max_sources=2 so
front ends can reject longer lists before computing anything.
"""

from dataclasses import dataclass

from . import classic, pcr, special
from .errors import RuleError


@dataclass(frozen=True)
class RuleSpec:
    name: str
    combine: object
    mode: str = "mass"
    needs: tuple = ()
    min_sources: int = 2
    max_sources: int = None


def _uft_combine(sources, params):
    from .uft import ScenarioConfig, uft_combine

    config = params.get("config")
    if config is None:
        config = ScenarioConfig()
    return uft_combine(sources, config)


def _conditional(sources, params):
    given = params["given"]
    frame = sources[0].frame
    hypothesis = frame.parse(given) if isinstance(given, str) else given
    base = params.get("base", "conjunctive")
    extra = {k: v for k, v in params.items() if k not in ("given", "base")}
    return classic.conditional(sources[0], hypothesis, rule=base, **extra)


def _consensus(sources, params):
    from .special import consensus

    frame = sources[0].frame
    focus = params["focus"]
    focus = frame.parse(focus) if isinstance(focus, str) else focus
    dogmatic_bayesian = bool(params.get("dogmatic_bayesian", False)) or (
        all(m.is_bayesian() for m in sources)
    )
    opinions = [m.to_opinion(focus) for m in sources]
    out = opinions[0]
    for w in opinions[1:]:
        out = consensus(out, w, dogmatic_bayesian=dogmatic_bayesian)
    return out


_RULES = {}


def _register(name, fn, **kw):
    _RULES[name] = RuleSpec(name=name, combine=fn, **kw)


_register("conjunctive", lambda ss, p: classic.conjunctive(*ss))
_register("disjunctive", lambda ss, p: classic.disjunctive(*ss))
_register("xor", lambda ss, p: classic.exclusive_disjunctive(*ss))
_register("mixed", lambda ss, p: classic.mixed(ss, p["expr"]), needs=("expr",))
_register("conditional", _conditional, needs=("given",), min_sources=1, max_sources=1)
_register("dempster", lambda ss, p: classic.dempster(*ss))
_register("murphy", lambda ss, p: classic.murphy_average(*ss))
_register("mixing", lambda ss, p: classic.weighted_mixing(ss, p["weights"]),
          needs=("weights",), min_sources=1)
_register("dsmc", lambda ss, p: classic.dsm_classic(*ss))
_register("dsmh", lambda ss, p: classic.dsm_hybrid(*ss))
_register("smets", lambda ss, p: classic.smets_tbm(*ss))
_register("yager", lambda ss, p: classic.yager(*ss))
_register("dubois-prade", lambda ss, p: classic.dubois_prade(*ss))
_register("wo", lambda ss, p: classic.weighted_operator(*ss, weights=p["weights"]),
          needs=("weights",))
_register("inagaki", lambda ss, p: classic.inagaki(*ss, p=p["p"]), needs=("p",))
_register("wao", lambda ss, p: pcr.wao(*ss))
_register("pcr1", lambda ss, p: pcr.pcr1(*ss))
_register("pcr2", lambda ss, p: pcr.pcr2(*ss))
_register("pcr3", lambda ss, p: pcr.pcr3(*ss))
_register("pcr4", lambda ss, p: pcr.pcr4(*ss))
_register("pcr5", lambda ss, p: pcr.pcr5(*ss))
_register("minc-a", lambda ss, p: pcr.minc(*ss, version="a"))
_register("minc-b", lambda ss, p: pcr.minc(*ss, version="b"))
_register("zhang-product",
          lambda ss, p: special.zhang_center(ss[0], ss[1], degree="product"),
          max_sources=2)
_register("zhang-union",
          lambda ss, p: special.zhang_center(ss[0], ss[1], degree="union"),
          max_sources=2)
_register("xavg", lambda ss, p: special.convolutive_x_average(ss[0], ss[1]),
          mode="interval", max_sources=2)
_register("consensus", _consensus, mode="opinion", needs=("focus",))
for _kind in special.TNORMS:
    _register(f"tnorm-{_kind}",
              lambda ss, p, k=_kind: special.tnorm_fusion(ss[0], ss[1], kind=k),
              max_sources=2)
for _kind in special.TCONORMS:
    _register(f"tconorm-{_kind}",
              lambda ss, p, k=_kind: special.tconorm_fusion(ss[0], ss[1], kind=k),
              max_sources=2)
_register("cautious",
          lambda ss, p: special.cautious_commonality_min(ss[0], ss[1]),
          max_sources=2)
for _base in special._IMPROVED_BASES:
    _register(f"improved-{_base}",
              lambda ss, p, b=_base: special.improved_rules(ss[0], ss[1], base=b),
              max_sources=2)
_register("uft", _uft_combine)


def selectors():
    """All valid rule selector strings, sorted."""
    return sorted(_RULES)


def resolve(name):
    """Look up a rule by its selector string."""
    spec = _RULES.get(name)
    if spec is None:
        raise ValueError(
            f"unknown rule {name!r}; valid selectors: {', '.join(selectors())}"
        )
    return spec


def validate_call(spec, n_sources, params):
    """Check arity and required parameters before running a rule."""
    if n_sources < spec.min_sources:
        raise RuleError(
            f"rule {spec.name!r} needs at least {spec.min_sources} sources, got {n_sources}"
        )
    if spec.max_sources is not None and n_sources > spec.max_sources:
        raise RuleError(
            f"rule {spec.name!r} takes at most {spec.max_sources} sources, got {n_sources}"
        )
    for key in spec.needs:
        if key not in params:
            raise RuleError(f"rule {spec.name!r} needs parameter {key!r}")
