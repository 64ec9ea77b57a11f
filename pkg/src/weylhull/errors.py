"""Exception types shared across the package.

Indices carried by errors are 0-based, like every index in the Python API.
"""


class WeylHullError(Exception):
    """Base class for all package errors."""


# --- generalized Cartan matrices -------------------------------------------

class GcmError(WeylHullError, ValueError):
    pass


class NotSquare(GcmError):
    def __init__(self, shape):
        self.shape = shape
        super().__init__(f"matrix is not square: {shape}")


class DiagonalNotTwo(GcmError):
    def __init__(self, i):
        self.i = i
        super().__init__(f"a[{i}][{i}] != 2")


class PositiveOffDiagonal(GcmError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"a[{i}][{j}] > 0")


class AsymmetricZero(GcmError):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"a[{i}][{j}] == 0 but a[{j}][{i}] != 0")


class NotSymmetrizable(WeylHullError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"no symmetrizer: cycle {self.cycle} is inconsistent")


# --- root data --------------------------------------------------------------

class DatumError(WeylHullError, ValueError):
    pass


class ShapeMismatch(DatumError):
    pass


class PairingMismatch(DatumError):
    def __init__(self, i, j, got, want):
        self.i, self.j = i, j
        super().__init__(f"<c_{j}, h_{i}> = {got}, expected a[{i}][{j}] = {want}")


class NotFree(DatumError):
    def __init__(self):
        super().__init__("the c_i are linearly dependent")


class NotCofree(DatumError):
    def __init__(self):
        super().__init__("the h_i are linearly dependent")


class RankTooSmall(DatumError):
    def __init__(self, d, need):
        self.d, self.need = d, need
        super().__init__(f"d = {d} < 2n - rank = {need}")


class DimensionMismatch(WeylHullError, ValueError):
    def __init__(self, got, want):
        self.got, self.want = got, want
        super().__init__(f"expected a vector of length {want}, got {got}")


# --- Weyl group -------------------------------------------------------------

class BudgetExceeded(WeylHullError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"enumeration exceeded {cap} elements")


class InfiniteSubgroup(WeylHullError):
    def __init__(self, subset):
        self.subset = tuple(sorted(subset))
        super().__init__(f"standard subgroup on {self.subset} is infinite")


# --- chamber geometry -------------------------------------------------------

class NotRegularDominant(WeylHullError, ValueError):
    pass


class NotDominant(WeylHullError, ValueError):
    pass


# --- orbit hulls ------------------------------------------------------------

class InteriorPoint(WeylHullError):
    """The point lies in the interior of the hull, so no proper face contains it."""


class OutsideHull(WeylHullError, ValueError):
    pass


class NotInterior(WeylHullError, ValueError):
    def __init__(self, t):
        self.t = t
        super().__init__(f"level {t} is not interior to the slice interval")


class NotInSlice(WeylHullError, ValueError):
    pass


class Truncated(WeylHullError):
    def __init__(self, what):
        super().__init__(f"search truncated: {what}")


class NotAFace(WeylHullError, ValueError):
    pass


class UnsupportedRank(WeylHullError, ValueError):
    pass


# --- matrix models ----------------------------------------------------------

class SingularInput(WeylHullError, ValueError):
    pass


class NotRegular(WeylHullError, ValueError):
    pass


class TargetOutsideHull(WeylHullError, ValueError):
    pass


class ToleranceNotMet(WeylHullError):
    def __init__(self, error, best):
        self.error = error
        self.best = best
        super().__init__(f"best attained error {error:.3e} exceeds tolerance")


class NotApplicable(WeylHullError):
    pass
