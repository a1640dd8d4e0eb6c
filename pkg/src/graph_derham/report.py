"""
結果の直列化

どの結果も JSON にできる素朴なデータに変換し、キーを整列して出力する。
"""
import dataclasses
from fractions import Fraction
from typing import Any

from ..utils.file_utils import dump_json
from .aut_action import InducedActionGroup, Permutation, PermutationGroup, group_profile
from .cochain import CohomologySpace, EdgeForm, VertexForm
from .exact_linalg import RationalMatrix
from .graph_core import Graph, Orientation, Subgraph
from .morphisms import GraphHomomorphism


def _fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _subgraph(sub: Subgraph) -> dict:
    return {
        "vertices": sorted(sub.vertices),
        "edges": [list(pair) for pair in sub.edge_pairs()],
    }


def to_serializable(obj: Any) -> Any:
    """
    結果の値を JSON にできるデータに変換

    有理数は "p/q"（整数なら "n"）の文字列、集合は整列したリスト、部分グラフは
    頂点と辺の組、行列は行のリスト、群は概要（位数など）にする。
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return _fraction(obj)
    if isinstance(obj, RationalMatrix):
        return [[_fraction(x) for x in row] for row in obj.entries]
    if isinstance(obj, Permutation):
        return list(obj.images)
    if isinstance(obj, Orientation):
        return list(obj.signs)
    if isinstance(obj, Graph):
        return {
            "vertex_count": obj.vertex_count,
            "edges": [list(pair) for pair in obj.edges],
            "signs": list(obj.signs),
        }
    if isinstance(obj, Subgraph):
        return _subgraph(obj)
    if isinstance(obj, (VertexForm, EdgeForm)):
        return [_fraction(x) for x in obj.values]
    if isinstance(obj, CohomologySpace):
        return {
            "degree": obj.degree,
            "dimension": obj.dimension,
            "basis": [to_serializable(form) for form in obj.basis],
            "supports": [_subgraph(sub) for sub in obj.supports],
        }
    if isinstance(obj, GraphHomomorphism):
        return {"vertex_map": list(obj.vertex_map)}
    if isinstance(obj, (PermutationGroup, InducedActionGroup)):
        return to_serializable(group_profile(obj))
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_serializable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(key): to_serializable(value) for key, value in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_serializable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_serializable(x) for x in obj]
    raise ValueError(f"直列化できない値です: {type(obj).__name__}")


def render_report(data: Any) -> str:
    """レポートをキー整列済みの JSON 文字列にする"""
    return dump_json(to_serializable(data))
