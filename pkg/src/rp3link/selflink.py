"""Self-linking number of a null-homologous knot in RP^3.

Same line count as for two curves, applied to one knot over unordered edge
pairs.  A crossing (x, v, y) is kept when the loop formed by an arc of the
knot from x to y and the segment of span(x, y) avoiding v is not
null-homologous.  With stored lifts X, Y of a closed lift and V = aX + bY,
that happens exactly when a and b have the same sign.
"""
from dataclasses import dataclass, field, replace

from .config import RunConfig
from .curves import validate
from .errors import AmbiguousClass, InconsistentDegree, NotNullHomologous
from .linking import Scan, Violation, run_trials, scan_self


def loop_class(alpha, beta, margin):
    if abs(alpha) < margin or abs(beta) < margin:
        raise AmbiguousClass("crossing sits at an endpoint of its line segment")
    return 1 if (alpha > 0) == (beta > 0) else 0


@dataclass
class SelfLinkReport:
    sl: int
    included: list
    excluded: list
    viewpoint: object
    viewpoints_tried: int = 1
    trial_values: list = field(default_factory=list)
    trial_viewpoints: list = field(default_factory=list)
    rejected: list = field(default_factory=list)

    @property
    def d(self):
        return 2 * self.sl

    @property
    def crossings(self):
        return sorted(self.included + self.excluded, key=lambda c: (c.i, c.j, c.s))

    def as_dict(self):
        return {
            "sl": self.sl,
            "d": self.d,
            "n_included": len(self.included),
            "n_excluded": len(self.excluded),
            "viewpoint": self.viewpoint.as_dict(),
            "viewpoints_tried": self.viewpoints_tried,
            "trial_values": list(self.trial_values),
            "trial_viewpoints": [v.as_dict() for v in self.trial_viewpoints],
            "rejected": [{"index": v.index, "violations": sorted({x.kind for x in vs})}
                         for v, vs in self.rejected],
            "crossings": [c.as_dict() for c in self.crossings],
        }


def _classified_scan(viewpoint, knot, tol, sign_convention):
    scan = scan_self(viewpoint, knot, tol, sign_convention)
    out = []
    for c in scan.crossings:
        try:
            cls = loop_class(c.alpha, c.beta, tol.separation)
        except AmbiguousClass as exc:
            scan.violations.append(Violation("ambiguous_class", str(exc)))
            continue
        out.append(_with_class(c, cls))
    return Scan(viewpoint, out, scan.violations)


def _with_class(c, cls):
    return replace(c, loop_class=cls)


def self_linking(knot, config=None, initial_viewpoints=(), sign_convention=1):
    config = config or RunConfig()
    if knot.closure != 1:
        raise NotNullHomologous(f"curve {knot.name!r} has closure -1; self-linking is undefined")
    validate(knot, config.tol)
    accepted, rejected = run_trials(
        lambda vp: _classified_scan(vp, knot, config.tol, sign_convention), config,
        list(initial_viewpoints))
    values = [sum(c.sign for c in s.crossings if c.loop_class == 1) for s in accepted]
    if len(set(values)) != 1:
        raise InconsistentDegree(f"self-linking differs across viewpoints: {values}")
    first = accepted[0]
    inc = [c for c in first.crossings if c.loop_class == 1]
    exc = [c for c in first.crossings if c.loop_class == 0]
    return SelfLinkReport(values[0], inc, exc, first.viewpoint,
                          len(accepted) + len(rejected), values,
                          [s.viewpoint for s in accepted], rejected)
