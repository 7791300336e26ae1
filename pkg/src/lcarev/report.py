"""Result type shared by the DFA oracle and the SBP algorithm."""

from __future__ import annotations

from dataclasses import dataclass

from .rule import Rule

# Residue carried by the initial node.  The node reached after j edges decides
# the cell counts n = j (mod period); the determinant oracle pins this.
INITIAL_RESIDUE = 0


@dataclass(frozen=True)
class ReversibilityReport:
    period: int
    residues: frozenset[int]
    rule: Rule

    def reversible(self, n: int) -> bool:
        if n < 1:
            raise ValueError("cell count must be positive")
        return n % self.period in self.residues

    def sorted_residues(self) -> list[int]:
        return sorted(self.residues)

    def describe(self) -> str:
        rs = ", ".join(map(str, self.sorted_residues()))
        return f"reversible iff n = {rs} (mod {self.period})"

    def to_json(self) -> dict:
        return {
            "rule": self.rule.coeffs,
            "left": self.rule.left,
            "period": str(self.period),
            "residues": self.sorted_residues(),
        }
