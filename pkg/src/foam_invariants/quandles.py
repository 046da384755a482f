"""
Finite multi-quandles: a colour set {0..size-1} with an inverse-closed family of operations.

Tables are numpy arrays with table[x, y] = x ▷ y.
"""

import logging
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from gauss_diagram.classes import IncaError, ResourceLimitError, Violation

logger = logging.getLogger(__name__)

AUTOMORPHISM_SIZE_LIMIT = 8


class QuandleAxiomError(IncaError):
    def __init__(self, violations: list[Violation]) -> None:
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True, eq=False)
class Operation:
    name: str
    table: np.ndarray
    inverse: str

    @property
    def is_involutory(self) -> bool:
        return self.inverse == self.name


@dataclass(frozen=True, eq=False)
class MultiQuandle:
    name: str
    size: int
    ops: tuple[Operation, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))

    @property
    def op_names(self) -> tuple[str, ...]:
        return tuple(op.name for op in self.ops)

    def op(self, name: str) -> Operation:
        for op in self.ops:
            if op.name == name:
                return op
        raise KeyError(name)

    def inverse_of(self, name: str) -> Operation:
        return self.op(self.op(name).inverse)

    @property
    def single_involutory(self) -> bool:
        """|B| = 1 with a self-inverse operation; colouring counts of such quandles are move invariants"""
        return len(self.ops) == 1 and self.ops[0].is_involutory

    def __str__(self) -> str:
        return self.name


# Builtins ###################


def _grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.meshgrid(np.arange(n), np.arange(n), indexing="ij")


def trivial(n: int) -> MultiQuandle:
    x, _ = _grid(n)
    return MultiQuandle(f"trivial({n})", n, (Operation("t", x.copy(), "t"),))


def dihedral(n: int) -> MultiQuandle:
    x, y = _grid(n)
    return MultiQuandle(f"dihedral({n})", n, (Operation("r", (2 * y - x) % n, "r"),))


def alexander(n: int, t: int) -> MultiQuandle:
    """x ▷ y = t·x + (1 − t)·y mod n; t must be a unit mod n"""
    t %= n
    try:
        t_inv = pow(t, -1, n)
    except ValueError:
        raise ValueError(f"{t} is not invertible modulo {n}") from None
    x, y = _grid(n)
    forward = (t * x + (1 - t) * y) % n
    if t_inv == t:
        return MultiQuandle(f"alexander({n},{t})", n, (Operation("a", forward, "a"),))
    backward = (t_inv * x + (1 - t_inv) * y) % n
    return MultiQuandle(
        f"alexander({n},{t})", n, (Operation("a", forward, "a_inv"), Operation("a_inv", backward, "a"))
    )


def dihedral_plus_point() -> MultiQuandle:
    """R3 ⊔ {pt}: dihedral action on {0,1,2}, colour 3 fixed by and fixing everything"""
    table = np.array(
        [
            [0, 2, 1, 0],
            [2, 1, 0, 1],
            [1, 0, 2, 2],
            [3, 3, 3, 3],
        ]
    )
    return MultiQuandle("dihedral-plus-point", 4, (Operation("r", table, "r"),))


def union(first: MultiQuandle, second: MultiQuandle) -> MultiQuandle:
    """Both operation families on the same colour set"""
    if first.size != second.size:
        raise ValueError(f"Cannot unite quandles of sizes {first.size} and {second.size}")
    clashes = set(first.op_names) & set(second.op_names)
    if clashes:
        raise ValueError(f"Operation names used by both quandles: {sorted(clashes)}")
    united = MultiQuandle(f"{first.name}+{second.name}", first.size, first.ops + second.ops)
    violations = validate_quandle(united)
    if violations:
        raise QuandleAxiomError(violations)
    return united


def from_spec(spec: str) -> MultiQuandle:
    """Builtin by name: trivial:N, dihedral:N, alexander:N:T or dihedral-plus-point"""
    name, *args = spec.split(":")
    try:
        numbers = [int(a) for a in args]
    except ValueError:
        raise ValueError(f"Invalid quandle spec {spec!r}") from None
    match name, numbers:
        case "trivial", [n] if n >= 1:
            return trivial(n)
        case "dihedral", [n] if n >= 1:
            return dihedral(n)
        case "alexander", [n, t] if n >= 1:
            return alexander(n, t)
        case "dihedral-plus-point", []:
            return dihedral_plus_point()
        case _:
            raise ValueError(f"Invalid quandle spec {spec!r}")


# Axioms ###################


def validate_quandle(quandle: MultiQuandle) -> list[Violation]:
    """Shape, inverse closure, idempotence, reversibility and pairwise distributivity"""
    n = quandle.size
    violations: list[Violation] = []
    names = quandle.op_names
    if len(set(names)) != len(names):
        violations.append(Violation(quandle.name, "duplicate operation names"))

    well_formed = []
    for op in quandle.ops:
        table = np.asarray(op.table)
        if table.shape != (n, n):
            violations.append(Violation(f"op {op.name}", f"table shape {table.shape}, expected {(n, n)}"))
            continue
        if not np.issubdtype(table.dtype, np.integer) or table.min() < 0 or table.max() >= n:
            violations.append(Violation(f"op {op.name}", f"entries must be colours in 0..{n - 1}"))
            continue
        well_formed.append(op)
    if violations:
        return violations

    x, y = _grid(n)
    diagonal = np.arange(n)
    for op in well_formed:
        if op.inverse not in names:
            violations.append(Violation(f"op {op.name}", f"inverse {op.inverse!r} is not listed"))
        else:
            inverse = quandle.op(op.inverse)
            if inverse.inverse != op.name:
                violations.append(Violation(f"op {op.name}", f"inverse {inverse.name} does not point back"))
            undone = inverse.table[op.table, y]
            for bad_x, bad_y in np.argwhere(undone != x)[:1]:
                violations.append(
                    Violation(f"op {op.name}", f"({bad_x} ▷ {bad_y}) ◁ {bad_y} != {bad_x} under {inverse.name}")
                )
        for bad in np.flatnonzero(op.table[diagonal, diagonal] != diagonal)[:1]:
            violations.append(Violation(f"op {op.name}", f"idempotence fails at {bad}"))
        for column in range(n):
            if len(set(op.table[:, column].tolist())) != n:
                violations.append(Violation(f"op {op.name}", f"x ↦ x ▷ {column} is not a bijection"))
                break

    # (x A y) B z == (x B z) A (y B z) for every ordered pair (A, B)
    X, Y, Z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    for a in well_formed:
        for b in well_formed:
            lhs = b.table[a.table[X, Y], Z]
            rhs = a.table[b.table[X, Z], b.table[Y, Z]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                i, j, k = bad[0]
                violations.append(Violation(f"ops {a.name},{b.name}", f"distributivity fails at ({i}, {j}, {k})"))
    return violations


def require_quandle(quandle: MultiQuandle) -> MultiQuandle:
    violations = validate_quandle(quandle)
    if violations:
        raise QuandleAxiomError(violations)
    return quandle


# Automorphisms ###################


def automorphisms(quandle: MultiQuandle, limit: int = AUTOMORPHISM_SIZE_LIMIT) -> list[tuple[int, ...]]:
    """All permutations preserving every listed operation, identity first"""
    require_quandle(quandle)
    n = quandle.size
    if n > limit:
        raise ResourceLimitError("automorphism quandle size", limit, n)
    found = []
    for perm in permutations(range(n)):
        alpha = np.array(perm)
        # alpha(x ▷ y) == alpha(x) ▷ alpha(y)
        if all(np.array_equal(alpha[op.table], op.table[np.ix_(alpha, alpha)]) for op in quandle.ops):
            found.append(perm)
    logger.debug("%s has %d automorphisms", quandle.name, len(found))
    return found


def is_group(perms: list[tuple[int, ...]]) -> bool:
    """Closure, identity and inverses of a finite set of permutations"""
    if not perms:
        return False
    elements = set(perms)
    n = len(perms[0])
    if tuple(range(n)) not in elements:
        return False
    for p in elements:
        inverse = [0] * n
        for i, image in enumerate(p):
            inverse[image] = i
        if tuple(inverse) not in elements:
            return False
        for q in elements:
            if tuple(p[q[i]] for i in range(n)) not in elements:
                return False
    return True
