"""
有理数上の厳密な線形代数モジュール

行列は Fraction の行優先タプルで保持し、消去は整数化した行に対する
分数なし (Bareiss) 消去で行う。浮動小数点は一切使わない。
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]


def to_vector(values: Iterable) -> Vector:
    """
    値の列を Fraction のタプルに変換

    Args:
        values: 整数・Fraction・"p/q" 文字列などの列

    Returns:
        ベクトル
    """
    return tuple(Fraction(value) for value in values)


def zero_vector(length: int) -> Vector:
    return (Fraction(0),) * length


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """標準内積"""
    if len(u) != len(v):
        raise ValueError(f"ベクトルの長さが一致しません: {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale_vector(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def sub_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class RationalMatrix:
    """有理数行列 (行優先、不変)"""

    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"行列の形状が不正です: {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        """
        行のリストから行列を作成

        Args:
            rows: 各行の値
            cols: 列数（行が0本のときに必要）

        Returns:
            行列
        """
        entries = tuple(to_vector(row) for row in rows)
        if cols is None:
            if not entries:
                raise ValueError("行が空の場合は列数を指定してください")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        columns = [to_vector(column) for column in columns]
        entries = tuple(tuple(column[i] for column in columns) for i in range(rows))
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
        ))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(self.columns()))

    def apply(self, vector: Sequence) -> Vector:
        """行列とベクトルの積"""
        vector = to_vector(vector)
        if len(vector) != self.cols:
            raise ValueError(f"次元が一致しません: 行列 {self.rows}x{self.cols}, ベクトル {len(vector)}")
        return tuple(dot(row, vector) for row in self.entries)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"積の次元が一致しません: {self.shape} @ {other.shape}")
        other_columns = other.columns()
        return RationalMatrix(self.rows, other.cols, tuple(
            tuple(dot(row, column) for column in other_columns) for row in self.entries
        ))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"和の次元が一致しません: {self.shape} + {other.shape}")
        return RationalMatrix(self.rows, self.cols, tuple(
            add_vectors(a, b) for a, b in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"差の次元が一致しません: {self.shape} - {other.shape}")
        return RationalMatrix(self.rows, self.cols, tuple(
            sub_vectors(a, b) for a, b in zip(self.entries, other.entries)
        ))

    def is_zero(self) -> bool:
        return all(is_zero_vector(row) for row in self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == RationalMatrix.identity(self.rows)

    def is_symmetric(self) -> bool:
        return self == self.transpose()


def stack_rows(top: RationalMatrix, bottom: RationalMatrix) -> RationalMatrix:
    """縦に連結"""
    if top.cols != bottom.cols:
        raise ValueError(f"列数が一致しません: {top.cols} != {bottom.cols}")
    return RationalMatrix(top.rows + bottom.rows, top.cols, top.entries + bottom.entries)


def stack_columns(left: RationalMatrix, right: RationalMatrix) -> RationalMatrix:
    """横に連結"""
    if left.rows != right.rows:
        raise ValueError(f"行数が一致しません: {left.rows} != {right.rows}")
    return RationalMatrix(left.rows, left.cols + right.cols, tuple(
        a + b for a, b in zip(left.entries, right.entries)
    ))


def _scaled_integer_row(row: Sequence[Fraction]) -> List[int]:
    # 分母の最小公倍数を掛けて整数行にする（行空間は変わらない）
    denominator = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in row), 1)
    return [int(x * denominator) for x in row]


def _fraction_free_echelon(rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """
    Bareiss の分数なし消去で整数行列を行階段形にする

    ピボットは左端の列から、各列で最初に見つかった非零行を選ぶ。

    Args:
        rows: 整数行（破壊しない）
        ncols: 列数

    Returns:
        階段形の行とピボット列のリスト
    """
    a = [list(row) for row in rows]
    nrows = len(a)
    pivots: List[int] = []
    previous = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][c]
        row_r = a[r]
        for i in range(r + 1, nrows):
            row_i = a[i]
            lead = row_i[c]
            for j in range(c + 1, ncols):
                # Sylvester の恒等式により割り切れる
                row_i[j] = (pivot * row_i[j] - lead * row_r[j]) // previous
            row_i[c] = 0
        previous = pivot
        pivots.append(c)
        r += 1
    return a, pivots


def reduced_row_echelon(m: RationalMatrix) -> Tuple[List[List[Fraction]], List[int]]:
    """
    既約行階段形を計算

    Args:
        m: 行列

    Returns:
        非零行（ランク本）とピボット列
    """
    integer_rows = [_scaled_integer_row(row) for row in m.entries]
    echelon, pivots = _fraction_free_echelon(integer_rows, m.cols)
    reduced = [[Fraction(x) for x in echelon[r]] for r in range(len(pivots))]

    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        pivot = reduced[r][c]
        reduced[r] = [x / pivot for x in reduced[r]]
        for above in range(r):
            factor = reduced[above][c]
            if factor:
                reduced[above] = [a - factor * b for a, b in zip(reduced[above], reduced[r])]

    return reduced, pivots


def rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _fraction_free_echelon([_scaled_integer_row(row) for row in m.entries], m.cols)
    return len(pivots)


def kernel_basis(m: RationalMatrix) -> List[Vector]:
    """
    右零空間の基底

    自由変数ごとに 1 本、既約行階段形から読み取る。ピボットは左端優先なので
    基底は実行ごとに同一になる。

    Args:
        m: 行列

    Returns:
        基底ベクトルのリスト
    """
    reduced, pivots = reduced_row_echelon(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * m.cols
        vector[free] = Fraction(1)
        for r, c in enumerate(pivots):
            vector[c] = -reduced[r][free]
        basis.append(tuple(vector))
    return basis


def image_basis(m: RationalMatrix) -> List[Vector]:
    """列空間の基底（元の行列のピボット列）"""
    if m.rows == 0:
        return []
    _, pivots = reduced_row_echelon(m)
    return [m.column(c) for c in pivots]


def solve(m: RationalMatrix, b: Sequence) -> Optional[Vector]:
    """
    m x = b を厳密に解く

    自由変数は 0 とした特殊解を返す。最小二乗は行わない。

    Args:
        m: 係数行列
        b: 右辺

    Returns:
        解ベクトル。矛盾する場合は None
    """
    b = to_vector(b)
    if len(b) != m.rows:
        raise ValueError(f"右辺の長さが行数と一致しません: {len(b)} != {m.rows}")
    if m.rows == 0:
        return zero_vector(m.cols)

    augmented = RationalMatrix(m.rows, m.cols + 1, tuple(
        row + (value,) for row, value in zip(m.entries, b)
    ))
    reduced, pivots = reduced_row_echelon(augmented)
    if pivots and pivots[-1] == m.cols:
        return None

    solution = [Fraction(0)] * m.cols
    for r, c in enumerate(pivots):
        solution[c] = reduced[r][m.cols]
    return tuple(solution)


def inverse(m: RationalMatrix) -> RationalMatrix:
    """逆行列。正則でなければ ValueError"""
    if m.rows != m.cols:
        raise ValueError(f"正方行列ではありません: {m.shape}")
    n = m.rows
    augmented = stack_columns(m, RationalMatrix.identity(n))
    reduced, pivots = reduced_row_echelon(augmented)
    if pivots[:n] != list(range(n)):
        raise ValueError("行列は正則ではありません")
    return RationalMatrix(n, n, tuple(tuple(row[n:]) for row in reduced))


def matrix_from_vectors(vectors: Sequence[Sequence], length: int) -> RationalMatrix:
    """ベクトルを行とする行列"""
    return RationalMatrix(len(vectors), length, tuple(to_vector(v) for v in vectors))


def span_rank(vectors: Sequence[Sequence], length: int) -> int:
    return rank(matrix_from_vectors(vectors, length))


def is_independent(vectors: Sequence[Sequence], length: int) -> bool:
    return span_rank(vectors, length) == len(vectors)


def spans_equal(a: Sequence[Sequence], b: Sequence[Sequence], length: int) -> bool:
    """2 つのベクトル集合が同じ部分空間を張るか"""
    rank_a = span_rank(a, length)
    rank_b = span_rank(b, length)
    return rank_a == rank_b == span_rank(list(a) + list(b), length)


def span_contains(basis: Sequence[Sequence], vector: Sequence, length: int) -> bool:
    return span_rank(basis, length) == span_rank(list(basis) + [vector], length)


def project_orthogonal(v: Sequence, subspace_basis: Sequence[Sequence]) -> Vector:
    """
    部分空間への直交射影

    グラム行列の方程式 G c = B^T v を解き、B c を返す。基底が一次従属でも
    方程式は整合するので特殊解で構わない。

    Args:
        v: 射影するベクトル
        subspace_basis: 部分空間を張るベクトル

    Returns:
        v の部分空間成分
    """
    v = to_vector(v)
    if not subspace_basis:
        return zero_vector(len(v))
    basis = [to_vector(b) for b in subspace_basis]
    if any(len(b) != len(v) for b in basis):
        raise ValueError("基底ベクトルと射影対象の長さが一致しません")

    gram = RationalMatrix(len(basis), len(basis), tuple(
        tuple(dot(a, b) for b in basis) for a in basis
    ))
    coefficients = solve(gram, [dot(b, v) for b in basis])
    if coefficients is None:
        raise RuntimeError("グラム方程式が矛盾しました")

    result = zero_vector(len(v))
    for c, b in zip(coefficients, basis):
        if c:
            result = add_vectors(result, scale_vector(c, b))
    return result
