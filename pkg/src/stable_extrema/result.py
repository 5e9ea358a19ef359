"""Value-plus-diagnostics container returned by the numerical evaluators."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EvalResult:
    """A computed value together with an error estimate.

    Attributes
    ----------
    value : complex
        The computed value.
    abs_err : float
        Estimated absolute error (>= 0).  Estimates come from refinement
        differences, last-term magnitudes or truncation bounds depending
        on the method; they are indicative, not rigorous bounds.
    terms : int
        Number of series terms / quadrature nodes / product factors used.
    method : str
        Short tag identifying the evaluation path, e.g. ``"double-gamma"``.
        Suffixes such as ``"+near-zero"`` flag degraded accuracy.
    """

    value: complex
    abs_err: float
    terms: int
    method: str

    def __post_init__(self):
        if self.abs_err < 0:
            raise ValueError("abs_err must be >= 0")
        if self.terms < 0:
            raise ValueError("terms must be >= 0")

    @property
    def real(self) -> float:
        return complex(self.value).real

    def __complex__(self) -> complex:
        return complex(self.value)

    def __float__(self) -> float:
        v = complex(self.value)
        if abs(v.imag) > 1e-8 * (1.0 + abs(v.real)):
            raise ValueError(f"value {v} is not real")
        return v.real
