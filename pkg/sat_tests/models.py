from dataclasses import dataclass

from pcgroup.spaces import evaluate


@dataclass(frozen=True)
class NilpotentWitness:
    """One element of G per variable; classifiers only return verified ones."""

    assignments: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "assignments", tuple(tuple(int(c) for c in y) for y in self.assignments)
        )

    def solves(self, space, eq):
        return evaluate(space, eq, self.assignments) == space.group.identity()
