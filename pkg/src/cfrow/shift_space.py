"""The conjugated two-sided-shift system over an induced region.

For regions on which every induced matrix has unit bottom-left entry
(so the top-left entry is 0 or 1), the coordinate change

    (x, y) |-> (x, (1-y)/y)   when u = 0,
    (x, y) |-> (x-1, 1-y)     when u = 1,

carries the induced map to

    (X, Y) |-> (alpha/X - beta, 1/(beta + alpha Y)),

with (alpha, beta) the digit pair at the current point, and carries the
induced measure to density 1/(mu(R) (1+XY)^2).  The map shifts the
bilateral digit string of (X, Y) by one slot.  The unit-s assumption
makes every d-factor equal to 1, so the digit pair at a region point w
is simply

    alpha(w) = -det(A_R(w)),        beta(w) = r_R(w) + u_R(next step).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FixedRay, NullSetPoint
from .induced import Region, backward_induced_step, induced_step
from .natural_ext import OmegaPoint
from .reals import as_real


def _require_unit_s(region: Region):
    if not region.unit_s:
        raise ValueError(
            f"{region.name}: shift construction needs unit bottom-left entries"
        )


@dataclass
class ShiftPoint:
    """Image of a region point under the coordinate change, with its
    provenance kept so the dynamics can be driven exactly."""

    X: object
    Y: object
    z: OmegaPoint
    u: int


def digit_pair_at(region: Region, z: OmegaPoint, cap: int = 100000):
    """(alpha, beta) at a region point, unit-s case."""
    _require_unit_s(region)
    rec0 = induced_step(region, z, cap)
    rec1 = induced_step(region, rec0.z_next, cap)
    return -rec0.A.det(), rec0.r + rec1.u


def phi(region: Region, z: OmegaPoint, cap: int = 100000) -> ShiftPoint:
    """Coordinate change; needs exact coordinate values on z."""
    _require_unit_s(region)
    if z.x_val is None or z.y_val is None:
        raise ValueError("shift coordinates need exact point values")
    rec = induced_step(region, z, cap)
    u = rec.u
    x, y = z.x_val, z.y_val
    if u == 0:
        if y == 0:
            raise NullSetPoint("y = 0 has no shift image on the u = 0 branch")
        return ShiftPoint(as_real(x), as_real((1 - y) / y), z, 0)
    return ShiftPoint(as_real(x - 1), as_real(1 - y), z, 1)


def phi_inverse(region: Region, X, Y) -> OmegaPoint:
    """Inverse coordinate change, off the X = 0 ray."""
    _require_unit_s(region)
    if X == 0:
        raise NullSetPoint("X = 0 is outside the inverse's domain")
    if X > 0:
        x, y = X, 1 / (Y + 1)
    else:
        x, y = X + 1, 1 - Y
    return OmegaPoint.from_values(as_real(x), as_real(y))


def tau_step(region: Region, w: ShiftPoint, cap: int = 100000) -> ShiftPoint:
    """One shift step: exact on quadratic/rational coordinates."""
    _require_unit_s(region)
    if w.X == 0:
        raise FixedRay("X = 0 is fixed")
    rec0 = induced_step(region, w.z, cap)
    rec1 = induced_step(region, rec0.z_next, cap)
    alpha = -rec0.A.det()
    beta = rec0.r + rec1.u
    X1 = as_real(alpha / w.X - beta)
    Y1 = as_real(1 / (beta + alpha * w.Y))
    return ShiftPoint(X1, Y1, rec0.z_next, rec1.u)


def tau_orbit(region: Region, z: OmegaPoint, n: int, cap: int = 100000):
    """[(X_k, Y_k)] shift points for k = 0..n from the region point z."""
    w = phi(region, z, cap)
    out = [w]
    for _ in range(n):
        w = tau_step(region, w, cap)
        out.append(w)
    return out


def bilateral_digits(region: Region, z: OmegaPoint, m: int, n: int, cap: int = 100000):
    """(past, future) digit pairs around z.

    future[k] = (alpha, beta) at the k-th forward induced image of z,
    k = 0..n; past[k] the same at the (k+1)-st backward image,
    k = 0..m-1.  When the backward orbit certifiably never visits the
    region again (stuck on the bottom edge), the past is truncated
    there; an empty past encodes the all-zero tail Y = 0.
    """
    _require_unit_s(region)
    recs = []
    cur = z
    for _ in range(n + 2):
        recs.append(induced_step(region, cur, cap))
        cur = recs[-1].z_next
    future = [(-recs[k].A.det(), recs[k].r + recs[k + 1].u) for k in range(n + 1)]

    # walk backwards: back_recs[k] is the step from z_{-(k+1)} into z_{-k}
    back_recs = []
    curb = z
    for _ in range(m):
        back = backward_induced_step(region, curb, cap)
        if back is None:
            break
        rec, prev = back
        back_recs.append(rec)
        curb = prev
    past = []
    for k in range(len(back_recs)):
        u_next = recs[0].u if k == 0 else back_recs[k - 1].u
        past.append((-back_recs[k].A.det(), back_recs[k].r + u_next))
    return past, future


def cylinder_contains(past, future, past_spec, future_spec) -> bool:
    """Test helper: do the bilateral digits extend the given finite
    digit words?"""
    if len(past_spec) > len(past) or len(future_spec) > len(future):
        return False
    return (
        list(past[: len(past_spec)]) == list(past_spec)
        and list(future[: len(future_spec)]) == list(future_spec)
    )
