"""GF(2) linear algebra on column vectors packed into Python integers.

Bit i of a column integer is row i.  Arbitrary-size XOR on Python ints is
already implemented in C, so this module has no compiled twin.
"""

__all__ = ["Echelon", "rank", "kernel"]


def _low_bit(x):
    return (x & -x).bit_length() - 1


class Echelon:
    """Incremental column echelon form with combination tracking.

    Columns are added in order; ``combos[j]`` records, as a bitmask over the
    inserted columns, which input columns sum to pivot column j.  Kernel
    vectors come out in insertion (lexicographic) order, which keeps every
    downstream basis choice reproducible.
    """

    def __init__(self, columns=()):
        self.pivots = {}  # low bit -> index into self.cols
        self.cols = []
        self.combos = []
        self.kernel = []
        self.ninserted = 0
        for c in columns:
            self.insert(c)

    def _reduce(self, vec, combo):
        while vec:
            b = _low_bit(vec)
            k = self.pivots.get(b)
            if k is None:
                break
            vec ^= self.cols[k]
            combo ^= self.combos[k]
        return vec, combo

    def insert(self, vec):
        """Add one column; returns True if it enlarged the span."""
        combo = 1 << self.ninserted
        self.ninserted += 1
        vec, combo = self._reduce(vec, combo)
        if vec:
            self.pivots[_low_bit(vec)] = len(self.cols)
            self.cols.append(vec)
            self.combos.append(combo)
            return True
        self.kernel.append(combo)
        return False

    @property
    def rank(self):
        return len(self.cols)

    def residue(self, vec):
        """Remainder of vec after reduction against the span."""
        return self._reduce(vec, 0)[0]

    def contains(self, vec):
        return self.residue(vec) == 0

    def coordinates(self, vec):
        """Combination of inserted columns equal to vec, or None."""
        vec, combo = self._reduce(vec, 0)
        return None if vec else combo


def rank(columns):
    return Echelon(columns).rank


def kernel(columns):
    """Kernel of the matrix with the given columns.

    Returns combination bitmasks (bit j = column j), first-lexicographic
    basis in column order.
    """
    return Echelon(columns).kernel
