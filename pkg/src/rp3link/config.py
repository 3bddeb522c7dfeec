"""Tolerances and run configuration shared by every engine."""
from dataclasses import dataclass, field, fields


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.  All values act on unit-normalized data.

    residual    -- collinearity residual of an accepted crossing
    param       -- distance of an edge parameter from a vertex (0 or 1)
    disc        -- normalized quadratic discriminant (tangency)
    sign        -- |det4| of a crossing frame with unit tangents
    separation  -- projective distance between curves / from viewpoint to curve
    degeneracy  -- |sin| between lifts that are treated as parallel
    zero        -- norm below which a vector is the zero vector
    residual_band -- accepted residuals are < residual, rejected ones must be
                     > residual * residual_band; anything between is ambiguous
    pole_margin -- oracle: angular clearance of the stereographic pole
    projection  -- oracle: relative thresholds of the planar diagram
    """

    residual: float = 1e-9
    param: float = 1e-7
    disc: float = 1e-10
    sign: float = 1e-9
    separation: float = 1e-6
    degeneracy: float = 1e-7
    zero: float = 1e-12
    residual_band: float = 1e3
    pole_margin: float = 0.1
    projection: float = 1e-9

    def __post_init__(self):
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise ValueError(f"tolerance {f.name} must be positive")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = 5
    tol: Tolerances = field(default_factory=Tolerances)
    # rejected viewpoints allowed before giving up
    max_resamples: int = 50
    workers: int = 1
    json: bool = False
    crossings_path: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.max_resamples < 0:
            raise ValueError("max_resamples must be >= 0")
