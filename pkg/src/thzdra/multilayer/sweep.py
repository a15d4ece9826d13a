"""Parameter sweeps with continuation, and the sheet vs thin-bulk check."""

from dataclasses import dataclass

from ..errors import ConvergenceError, DomainError, ThzDraError
from .solver import find_modes, solve_mode

MAX_BISECTIONS = 6
# a continuation step that moves n_eff by more than this (relative) is
# treated as a possible branch hop and refined by bisection
MAX_STEP_CHANGE = 0.05


@dataclass(frozen=True)
class SweepPoint:
    value: float
    mode: object = None  # GuidedMode, or None for a gap
    error: str = None

    @property
    def is_gap(self):
        return self.mode is None


def hybrid_mode(stack, omega, classify=True):
    """The fundamental guided TM mode (largest ``Re(n_eff)``)."""
    modes = find_modes(stack, omega, classify=classify)
    if not modes:
        raise ConvergenceError(f"no guided TM mode found at omega={omega:.6g} rad/s")
    return modes[0]


def _solve_at(template, parameter, value, seed, classify):
    stack, omega = template.with_parameter(parameter, value).build()
    return solve_mode(stack, omega, seed, classify=classify)


def _continue(template, parameter, start, mode, target, depth, classify):
    try:
        found = _solve_at(template, parameter, target, mode.n_eff, classify)
        jump = abs(found.n_eff - mode.n_eff) / abs(mode.n_eff)
        if jump <= MAX_STEP_CHANGE or depth >= MAX_BISECTIONS:
            return found
    except ThzDraError:
        if depth >= MAX_BISECTIONS:
            raise
    mid = 0.5 * (start + target)
    mid_mode = _continue(template, parameter, start, mode, mid, depth + 1, False)
    return _continue(template, parameter, mid, mid_mode, target, depth + 1, classify)


def _is_sorted(grid):
    return all(a <= b for a, b in zip(grid, grid[1:])) or all(a >= b for a, b in zip(grid, grid[1:]))


def sweep(template, parameter, grid, seed=None, continuation=True, classify=True):
    """Track one mode across ``grid`` values of ``parameter``.

    ``template`` must provide ``with_parameter(name, value)`` and
    ``build() -> (stack, omega)``. With continuation each converged mode
    seeds the next grid point, and a failed step is retried through up to
    six successive midpoint bisections. Steps that move n_eff by more
    than 5% are bisected the same way, which keeps coarse grids on the
    branch a fine grid would follow. A point that still fails becomes a
    gap entry; output order always matches ``grid``.
    """
    grid = [float(v) for v in grid]
    if len(grid) < 2:
        raise DomainError("sweep grid needs at least two points")
    if not _is_sorted(grid):
        raise DomainError("sweep grid must be sorted")
    template.with_parameter(parameter, grid[0])  # rejects unknown parameters up front

    points = []
    last = None  # (value, mode)
    for value in grid:
        try:
            if continuation and last is not None and value == last[0]:
                mode = last[1]  # zero step: continuation is the identity
            elif last is None or not continuation:
                stack, omega = template.with_parameter(parameter, value).build()
                if seed is not None and last is None:
                    mode = solve_mode(stack, omega, seed, classify=classify)
                else:
                    mode = hybrid_mode(stack, omega, classify=classify)
            else:
                mode = _continue(template, parameter, last[0], last[1], value, 0, classify)
        except ThzDraError as exc:
            points.append(SweepPoint(value, None, f"{exc.category}: {exc}"))
            continue
        points.append(SweepPoint(value, mode))
        last = (value, mode)
    return points


def equivalence_check(stack, omega, thickness, seed=None):
    """Relative n_eff deviation between sheet and thin-bulk graphene models.

    The sheet-model mode is the fundamental mode (or the one reached from
    ``seed``); the thin-bulk solve starts from it.
    """
    if not stack.sheets:
        raise DomainError("equivalence check needs at least one graphene sheet")
    if seed is None:
        sheet_mode = hybrid_mode(stack, omega, classify=False)
    else:
        sheet_mode = solve_mode(stack, omega, seed, classify=False)
    bulk_stack = stack.materialize_thin_bulk(omega, thickness)
    bulk_mode = solve_mode(bulk_stack, omega, sheet_mode.n_eff, classify=False)
    return abs(sheet_mode.n_eff - bulk_mode.n_eff) / abs(sheet_mode.n_eff)
