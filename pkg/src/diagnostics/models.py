"""Row models for comparison, sweep and closeness tables."""
from pydantic import BaseModel, Field


class ComparisonRow(BaseModel):
    """Eigenvalue n under several methods with their pairwise gaps."""

    n: int
    values: dict[str, tuple[float, float]] = Field(description="method -> (Re lambda, Im lambda)")
    gaps: dict[str, float] = Field(default_factory=dict, description="'a_b' -> |lambda_a - lambda_b|")

    def gap(self, a: str, b: str) -> float:
        return self.gaps[f"{a}_{b}"]

    def flat(self) -> dict:
        row: dict = {"n": self.n}
        for method, (re, im) in self.values.items():
            row[f"{method}_re"] = re
            row[f"{method}_im"] = im
        for pair, gap in self.gaps.items():
            row[f"gap_{pair}"] = gap
            row[f"ngap_{pair}"] = self.n * gap
            row[f"n3gap_{pair}"] = self.n**3 * gap
        return row


class SweepRow(BaseModel):
    """One eigenvalue at one (alpha, beta) point."""

    alpha: float
    beta: float
    n: int
    re: float
    im: float


class ClosenessRow(BaseModel):
    """L2 distance of the n-th eigenfunction from sqrt(2) cos(pi n x), with running sum of squares."""

    n: int
    distance: float
    partial_sum: float


class SlopeSummary(BaseModel):
    """Log-log decay rate of one method's gap to the reference."""

    reference: str
    method: str
    slope: float | None = Field(default=None, description="None when too few gaps lie above the floor")
