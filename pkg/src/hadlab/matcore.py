"""Sign-matrix value types, the Hadamard catalog, block-constant builders,
equivalence moves, and bit-exact text/JSON I/O.

All matrices are plain numpy arrays: ``int64`` with entries in {-1, +1} for
sign matrices, ``float64`` for real matrices.  Hadamard verification is done
in exact integer arithmetic, never floating point.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

#: Largest matrix order the constructors will build by default.
DEFAULT_MAX_ORDER = 4096

_W2 = np.array([[1, 1], [1, -1]], dtype=np.int64)

# The unique 12x12 Hadamard matrix (up to equivalence), hard-coded row by row.
_PALEY_12 = "\n".join(
    [
        "+-----------",
        "++-+---+++-+",
        "+++-+---+++-",
        "+-++-+---+++",
        "++-++-+---++",
        "+++-++-+---+",
        "++++-++-+---",
        "+-+++-++-+--",
        "+--+++-++-+-",
        "+---+++-++-+",
        "++---+++-++-",
        "+-+---+++-++",
    ]
)


class MatrixFormatError(ValueError):
    """Malformed sign-matrix text or entries outside {-1, +1}."""


class MaxOrderError(ValueError):
    """A construction would exceed the configured maximum order."""


def as_sign_matrix(entries) -> np.ndarray:
    """Validate and return a read-only int64 matrix with entries in {-1, +1}."""
    s = np.asarray(entries)
    if s.ndim != 2:
        raise MatrixFormatError(f"expected a 2-d array, got ndim={s.ndim}")
    if not np.issubdtype(s.dtype, np.number):
        raise MatrixFormatError(f"non-numeric dtype {s.dtype}")
    out = np.asarray(s, dtype=np.int64).copy()
    if not np.array_equal(out, s) or not np.all(np.abs(out) == 1):
        raise MatrixFormatError("entries must be exactly -1 or +1")
    out.setflags(write=False)
    return out


def as_real_matrix(entries) -> np.ndarray:
    """Validate and return a read-only float64 matrix with finite entries."""
    m = np.array(entries, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("entries must be finite (no NaN/Inf)")
    m.setflags(write=False)
    return m


def is_hadamard(s) -> bool:
    """Exact integer check that ``s`` is square with pairwise orthogonal rows,
    i.e. s @ s.T == N * I."""
    s = as_sign_matrix(s)
    n, cols = s.shape
    if n != cols:
        raise ValueError(f"matrix must be square, got {n}x{cols}")
    gram = s @ s.T
    return np.array_equal(gram, n * np.eye(n, dtype=np.int64))


def require_hadamard(s) -> np.ndarray:
    """Return ``s`` as a validated sign matrix, raising if it is not Hadamard."""
    s = as_sign_matrix(s)
    if not is_hadamard(s):
        raise ValueError("matrix is not Hadamard (rows are not pairwise orthogonal)")
    return s


def walsh(n: int, max_order: int | None = None) -> np.ndarray:
    """The order-2^n Walsh matrix, the n-fold Kronecker power of [[+,+],[+,-]].

    Double indices are ordered lexicographically, so entry (x, y) for bit
    strings x, y (most significant bit first) is (-1)**(x . y).
    """
    if n < 0:
        raise ValueError("exponent must be >= 0")
    limit = DEFAULT_MAX_ORDER if max_order is None else max_order
    if 2**n > limit:
        raise MaxOrderError(f"order 2^{n} exceeds maximum order {limit}")
    w = np.array([[1]], dtype=np.int64)
    for _ in range(n):
        w = np.kron(w, _W2)
    w.setflags(write=False)
    return w


def paley12() -> np.ndarray:
    """The 12x12 Hadamard matrix: first row + followed by eleven -, with a
    circulant core."""
    return parse_sign_matrix(_PALEY_12)


def kronecker(h, k, max_order: int | None = None) -> np.ndarray:
    """Kronecker product of two sign matrices, double indices lexicographic:
    (h (x) k)[ia, jb] = h[i, j] * k[a, b]."""
    h = as_sign_matrix(h)
    k = as_sign_matrix(k)
    limit = DEFAULT_MAX_ORDER if max_order is None else max_order
    if h.shape[0] * k.shape[0] > limit or h.shape[1] * k.shape[1] > limit:
        raise MaxOrderError(
            f"product size {h.shape[0] * k.shape[0]}x{h.shape[1] * k.shape[1]} "
            f"exceeds maximum order {limit}"
        )
    out = np.kron(h, k)
    out.setflags(write=False)
    return out


def _check_permutation(perm, size: int, what: str) -> np.ndarray:
    p = np.asarray(perm, dtype=np.int64)
    if p.shape != (size,) or sorted(p.tolist()) != list(range(size)):
        raise ValueError(f"{what} is not a permutation of 0..{size - 1}")
    return p


def _check_signs(signs, size: int, what: str) -> np.ndarray:
    v = np.asarray(signs, dtype=np.int64)
    if v.shape != (size,) or not np.all(np.abs(v) == 1):
        raise ValueError(f"{what} must be {size} values in {{-1, +1}}")
    return v


def permute_negate(s, row_perm=None, col_perm=None, row_signs=None, col_signs=None) -> np.ndarray:
    """Apply a row/column permutation followed by row/column negations.

    Row i of the result is ``row_signs[i] * s[row_perm[i]]`` with columns
    treated the same way.  These are exactly the moves that preserve the
    Hadamard property.  ``None`` means the identity move.
    """
    s = as_sign_matrix(s)
    rows, cols = s.shape
    out = s.copy()
    if row_perm is not None:
        out = out[_check_permutation(row_perm, rows, "row_perm"), :]
    if col_perm is not None:
        out = out[:, _check_permutation(col_perm, cols, "col_perm")]
    if row_signs is not None:
        out = out * _check_signs(row_signs, rows, "row_signs")[:, None]
    if col_signs is not None:
        out = out * _check_signs(col_signs, cols, "col_signs")[None, :]
    out.setflags(write=False)
    return out


def parse_sign_matrix(text: str) -> np.ndarray:
    """Parse the sign-text format: one row per line of '+'/'-' characters,
    spaces inside a row ignored, blank lines skipped."""
    rows = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.replace(" ", "").replace("\t", "").strip()
        if not line:
            continue
        row = []
        for ch in line:
            if ch == "+":
                row.append(1)
            elif ch == "-":
                row.append(-1)
            else:
                raise MatrixFormatError(f"invalid character {ch!r} on line {lineno}")
        rows.append(row)
    if not rows:
        raise MatrixFormatError("empty matrix text")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise MatrixFormatError("ragged rows: all rows must have equal length")
    return as_sign_matrix(np.array(rows, dtype=np.int64))


def serialize_sign_matrix(s) -> str:
    """Render a sign matrix in the text format, LF-separated, no trailing newline."""
    s = as_sign_matrix(s)
    return "\n".join("".join("+" if v > 0 else "-" for v in row) for row in s)


def matrix_digest(s) -> str:
    """Short content hash of a sign matrix (stable across runs)."""
    return hashlib.sha256(serialize_sign_matrix(s).encode()).hexdigest()[:12]


@dataclass(frozen=True)
class BlockConstantSpec:
    """A k x l grid of values plus row/column block sizes describing a matrix
    that is constant on each rectangular block."""

    block_values: tuple[tuple[float, ...], ...]
    row_sizes: tuple[int, ...]
    col_sizes: tuple[int, ...]

    def __post_init__(self):
        values = tuple(tuple(float(v) for v in row) for row in self.block_values)
        object.__setattr__(self, "block_values", values)
        object.__setattr__(self, "row_sizes", tuple(int(m) for m in self.row_sizes))
        object.__setattr__(self, "col_sizes", tuple(int(m) for m in self.col_sizes))
        if any(m < 0 for m in self.row_sizes) or any(m < 0 for m in self.col_sizes):
            raise ValueError("block sizes must be >= 0")
        k = len(values)
        if k != len(self.row_sizes):
            raise ValueError(f"grid has {k} block rows but {len(self.row_sizes)} row sizes")
        widths = {len(row) for row in values}
        if len(widths) > 1:
            raise ValueError("ragged block-value grid")
        l = widths.pop() if widths else 0
        if l != len(self.col_sizes):
            raise ValueError(f"grid has {l} block cols but {len(self.col_sizes)} col sizes")

    @classmethod
    def square(cls, block_values, sizes) -> "BlockConstantSpec":
        """Square-diagonal shorthand: equal row and column size lists."""
        sizes = tuple(sizes)
        return cls(tuple(tuple(row) for row in block_values), sizes, sizes)


def block_constant(spec: BlockConstantSpec) -> np.ndarray:
    """Assemble the block-constant matrix described by ``spec``."""
    total_rows = sum(spec.row_sizes)
    total_cols = sum(spec.col_sizes)
    out = np.zeros((total_rows, total_cols), dtype=np.float64)
    row_offsets = np.concatenate([[0], np.cumsum(spec.row_sizes)])
    col_offsets = np.concatenate([[0], np.cumsum(spec.col_sizes)])
    for i, row in enumerate(spec.block_values):
        for j, value in enumerate(row):
            out[row_offsets[i] : row_offsets[i + 1], col_offsets[j] : col_offsets[j + 1]] = value
    out.setflags(write=False)
    return out


def _index_tuple(indices, n: int, what: str) -> tuple[int, ...]:
    idx = tuple(int(i) for i in indices)
    if len(set(idx)) != len(idx):
        raise ValueError(f"{what} contains duplicate indices")
    if any(i < 0 or i >= n for i in idx):
        raise ValueError(f"{what} indices must lie in 0..{n - 1}")
    return tuple(sorted(idx))


@dataclass(frozen=True, eq=False)
class PartitionedHadamard:
    """A square sign matrix together with a row subset and column subset that
    select the corner block A; B, C, D are the induced complementary blocks.

    Index sets are 0-based and stored sorted.  The matrix itself is only
    validated as a sign matrix here; operations whose contracts need
    orthogonal rows check that themselves.
    """

    h: np.ndarray
    rows_a: tuple[int, ...]
    cols_a: tuple[int, ...]

    def __post_init__(self):
        h = as_sign_matrix(self.h)
        if h.shape[0] != h.shape[1]:
            raise ValueError(f"matrix must be square, got {h.shape[0]}x{h.shape[1]}")
        n = h.shape[0]
        rows = _index_tuple(self.rows_a, n, "rows_a")
        cols = _index_tuple(self.cols_a, n, "cols_a")
        if len(rows) != len(cols):
            raise ValueError("rows_a and cols_a must have the same size")
        if not 1 <= len(rows) < n:
            raise ValueError(f"corner size must satisfy 1 <= r < {n}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "rows_a", rows)
        object.__setattr__(self, "cols_a", cols)

    @property
    def n(self) -> int:
        return self.h.shape[0]

    @property
    def r(self) -> int:
        return len(self.rows_a)

    @property
    def rows_d(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if i not in set(self.rows_a))

    @property
    def cols_d(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if j not in set(self.cols_a))

    @property
    def a(self) -> np.ndarray:
        return self.h[np.ix_(self.rows_a, self.cols_a)]

    @property
    def b(self) -> np.ndarray:
        return self.h[np.ix_(self.rows_a, self.cols_d)]

    @property
    def c(self) -> np.ndarray:
        return self.h[np.ix_(self.rows_d, self.cols_a)]

    @property
    def d(self) -> np.ndarray:
        return self.h[np.ix_(self.rows_d, self.cols_d)]


# --- catalog -----------------------------------------------------------------

_CATALOG_MAX_EXPONENT = 12


def catalog_names(max_order: int = DEFAULT_MAX_ORDER) -> tuple[str, ...]:
    """Names of the built-in Hadamard matrices within ``max_order``."""
    names = [f"walsh{n}" for n in range(_CATALOG_MAX_EXPONENT + 1) if 2**n <= max_order]
    if 12 <= max_order:
        names.append("paley12")
    return tuple(names)


def catalog_matrix(name: str, max_order: int | None = None) -> np.ndarray:
    """Look up a catalog matrix by name ('walsh<n>' or 'paley12')."""
    if name == "paley12":
        return paley12()
    if name.startswith("walsh"):
        try:
            n = int(name[len("walsh") :])
        except ValueError:
            raise KeyError(f"unknown catalog matrix {name!r}") from None
        if 0 <= n <= _CATALOG_MAX_EXPONENT:
            return walsh(n, max_order=max_order)
    raise KeyError(f"unknown catalog matrix {name!r}")


# --- JSON with deterministic full-precision floats ---------------------------


def format_float(value: float, significant: int = 17) -> str:
    """Format a finite float with the given number of significant digits."""
    x = float(value)
    if not math.isfinite(x):
        raise ValueError("cannot format non-finite value")
    return format(x, f".{significant}g")


def _emit_json(obj, out: list[str], indent: int, level: int, significant: int) -> None:
    pad = " " * (indent * (level + 1))
    closing = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(obj, significant))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {type(key)}")
            out.append(("," if i else "") + "\n" + pad + json.dumps(key) + ": ")
            _emit_json(value, out, indent, level + 1, significant)
        out.append("\n" + closing + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            out.append("[]")
            return
        out.append("[")
        for i, value in enumerate(obj):
            out.append(("," if i else "") + "\n" + pad)
            _emit_json(value, out, indent, level + 1, significant)
        out.append("\n" + closing + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj)} to JSON")


def json_dumps(obj, indent: int = 2, significant: int = 17) -> str:
    """Deterministic JSON: insertion-ordered keys, floats printed with a fixed
    number of significant digits (17 round-trips doubles exactly)."""
    out: list[str] = []
    _emit_json(obj, out, indent, 0, significant)
    return "".join(out)


def real_matrix_to_json(m) -> dict:
    """Row-major JSON object {"rows", "cols", "data"} for a real matrix."""
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    return {"rows": m.shape[0], "cols": m.shape[1], "data": [float(v) for v in m.ravel()]}


def real_matrix_from_json(obj) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = np.asarray(obj["data"], dtype=np.float64)
    if data.shape != (rows * cols,):
        raise ValueError(f"data length {data.size} does not match {rows}x{cols}")
    return as_real_matrix(data.reshape(rows, cols))
