"""Built-in example models."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Example:
    name: str
    expr: str
    description: str
    sh_dim: int
    torus_bound: int


EXAMPLES: tuple[Example, ...] = (
    Example("line-p1", "O(-1) -> P^1", "blow-up of C^2 at the origin", 1, 1),
    Example("line-p2", "O(-1) -> P^2", "monotone line bundle over P^2", 2, 2),
    Example("line-p3", "O(-1) -> P^3", "Lefschetz domain at every level 1..3", 3, 3),
    Example("split-p3", "O(-1)^2 -> P^3", "QH not semisimple, SH semisimple", 2, 2),
    Example("wide-m1-n4", "O(-1)^2 -> P^2", "n1 = n/(m+1), n2 = mn/(m+1) at m=1, n=4", 1, 1),
    Example("wide-m2-n3", "O(-2) -> P^2", "n1 = n/(m+1), n2 = mn/(m+1) at m=2, n=3", 1, 1),
    Example("cy-p1", "O(-1)^2 -> P^1", "Calabi-Yau resolved conifold", 0, 0),
    Example("cy-p2", "O(-1)^3 -> P^2", "Calabi-Yau, mn1 = n2+1", 0, 0),
    Example("ball", "C^4", "the ball has vanishing SH", 0, 0),
    Example("blowup-1-2", "Bl(1, C^2)", "one point blown up in C^2", 1, 1),
    Example("blowup-3-2", "Bl(3, C^2)", "sharp torus bound m(n-1) = 3", 3, 3),
    Example("blowup-2-3", "Bl(2, C^3)", "torus bound m(n-1) = 4", 4, 4),
    Example("flip-5", "flip(C^5, 2, 3)", "reverse simple flip of the ball", 2, 2),
    Example("sum", "(O(-1) -> P^2) # flip(C^3, 1, 2)", "boundary connected sum", 4, 4),
)


def get_example(name: str) -> Example:
    for example in EXAMPLES:
        if example.name == name:
            return example
    raise KeyError(f"unknown example: {name}")
