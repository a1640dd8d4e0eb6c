"""
グラフ・ド・ラーム検証ツールのメインモジュール

    python -m src.graph_derham <サブコマンド> [グラフファイル] [オプション]

レポートは標準出力（--out 指定時はファイル）に、進捗は標準エラー出力に出す。
終了コードは 0: 成功（全ての証明書が成立）, 1: 検証失敗, 2: 使い方・入力の誤り。
"""
import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from ..utils.config import Config
from ..utils.file_utils import dump_json, read_text_file, write_json_file
from ..utils.graph_file import parse_cover_file, parse_graph_file
from .aut_action import (
    action_kernel,
    automorphism_group,
    canonical_form,
    classify_b1_one,
    group_profile,
    induced_action,
    is_trivial_kernel_case,
    isomorphic_components_check,
    kernel_characterization_h0,
    kernel_characterization_h1,
    kernel_restriction_check,
)
from .cochain import EdgeForm, VertexForm, cohomology
from .decomposition import (
    aut_restriction_check,
    cycle_forest,
    kernel_interpretation,
    retract_homomorphism,
    splitting_verification,
    verify_minimality,
)
from .derham_calculus import (
    edge_integral,
    hodge_decomposition,
    integral_additivity_check,
    linearity_check,
    orientation_reversal_check,
    stokes_check,
    vertex_integral,
)
from .generators import random_cover, random_edge_form, random_subgraph, random_vertex_form
from .graph_core import Graph, betti_numbers, full_subgraph, induced_subgraph
from .mayer_vietoris import LIFTS, lift_independence_check, long_sequence_check, short_sequence_check
from .orientation_search import (
    EXHAUSTIVE_BOUND,
    METHODS,
    conjecture_sweep,
    count_natural_orientations,
    find_natural_orientation,
    verify_witness,
)
from .report import to_serializable

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

Report = Dict[str, object]


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _parse_rationals(text: str, expected: int, label: str) -> Tuple[Fraction, ...]:
    tokens = [token.strip() for token in text.split(",")] if text.strip() else []
    if len(tokens) != expected:
        raise ValueError(f"{label} の値の個数 {len(tokens)} が {expected} と一致しません")
    values = []
    for token in tokens:
        try:
            values.append(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{label} の値が有理数ではありません: {token}")
    return tuple(values)


def _subgraph_from_args(g: Graph, args: argparse.Namespace):
    if not args.vertices:
        return full_subgraph(g)
    vertices = [int(token) for token in args.vertices.split(",")]
    return induced_subgraph(g, vertices)


def _vertex_form(g: Graph, args: argparse.Namespace, rng: random.Random) -> VertexForm:
    if args.form:
        return VertexForm(g, _parse_rationals(args.form, g.vertex_count, "--form"))
    return random_vertex_form(g, rng)


def run_cohomology(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    b0, b1 = betti_numbers(g)
    degrees = [args.degree] if args.degree is not None else [0, 1]
    return {
        "betti": {"b0": b0, "b1": b1},
        "cohomology": {str(p): cohomology(g, p) for p in degrees},
    }, True


def run_aut(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    group = automorphism_group(g)
    n, edges = canonical_form(g)
    return {
        "automorphism_group": group_profile(group),
        "canonical_form": {"vertex_count": n, "edges": edges},
    }, True


def run_action(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    degree = args.degree if args.degree is not None else 1
    group = automorphism_group(g)
    action = induced_action(g, degree, group)
    report: Report = {
        "degree": degree,
        "dimension": action.dimension,
        "automorphism_order": group.order,
        "induced_group": group_profile(action),
        "kernel_order": len(action.kernel),
    }
    ok = True
    if degree == 0:
        characterization = kernel_characterization_h0(g, group)
        components = isomorphic_components_check(g, group)
        report["kernel_characterization"] = characterization
        report["isomorphic_components"] = components
        ok = characterization.agree and components.holds
    elif betti_numbers(g)[1] >= 1:
        characterization = kernel_characterization_h1(g, group)
        restriction = kernel_restriction_check(g, group)
        report["kernel_characterization"] = characterization
        report["kernel_restriction"] = restriction
        ok = characterization.agree and restriction.holds
        if betti_numbers(g) == (1, 1):
            report["b1_one_classification"] = classify_b1_one(g)
        if is_trivial_kernel_case(g):
            report["trivial_kernel"] = len(action.kernel) == 1
            ok = ok and len(action.kernel) == 1
    return report, ok


def run_decompose(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    d = cycle_forest(g)
    minimality = verify_minimality(g)
    report: Report = {
        "forest": d.forest,
        "cycle_retract": d.cycle_retract,
        "intersection_vertices": d.intersection_vertices,
        "layers": d.layers,
        "minimality": minimality,
    }
    ok = minimality.holds
    if g.vertex_count > 0:
        restriction = aut_restriction_check(g)
        report["aut_restriction"] = restriction
        ok = ok and restriction.holds
    try:
        report["retract"] = retract_homomorphism(d)
    except ValueError as e:
        report["retract"] = {"error": str(e)}
    return report, ok


def run_split(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    certificate = splitting_verification(g)
    report: Report = {"splitting": certificate}
    if not certificate.hypotheses_met:
        _log(f"仮定を満たさないため対象外です: {', '.join(certificate.failed_hypotheses)}")
        return report, True
    interpretation = kernel_interpretation(g)
    report["kernel_interpretation"] = interpretation
    return report, certificate.holds and interpretation.holds


def run_integrate(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    if not args.form and not args.edge_form:
        raise ValueError("--form か --edge-form のどちらかを指定してください")
    sub = _subgraph_from_args(g, args)
    report: Report = {"subgraph": sub}
    if args.form:
        f = VertexForm(g, _parse_rationals(args.form, g.vertex_count, "--form"))
        report["vertex_integral"] = vertex_integral(sub, None, f)
    if args.edge_form:
        omega = EdgeForm(g, _parse_rationals(args.edge_form, g.edge_count, "--edge-form"))
        report["edge_integral"] = edge_integral(sub, None, omega)
    return report, True


def run_stokes(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    rng = random.Random(args.seed)
    sub = _subgraph_from_args(g, args)
    f = _vertex_form(g, args, rng)
    stokes = stokes_check(sub, None, f)
    reversal = orientation_reversal_check(sub, None, f)
    return {
        "subgraph": sub,
        "form": f,
        "stokes": stokes,
        "orientation_reversal": reversal,
    }, stokes.holds and reversal.holds


def run_hodge(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    certificate = hodge_decomposition(g)
    return {"hodge": certificate}, certificate.holds


def run_mv(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    if args.cover:
        a, b = parse_cover_file(read_text_file(args.cover), g)
    else:
        _log(f"--cover がないのでシード {args.seed} でランダムな被覆を使います")
        a, b = random_cover(g, random.Random(args.seed))
    short = short_sequence_check(g, a, b)
    long_sequence = long_sequence_check(g, a, b, args.lift)
    independent = lift_independence_check(g, a, b)
    return {
        "cover": {"A": a, "B": b},
        "short_sequence": short,
        "long_sequence": long_sequence,
        "lift_independent": independent,
    }, short.holds and long_sequence.holds and independent


def run_natorient(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    result = find_natural_orientation(
        g,
        method=args.method,
        cycle_cap=config.get("search.cycle_cap", 20),
        max_b1=config.get("search.max_b1", 4),
    )
    report: Report = {
        "result": result,
        "verified": result.witness is not None and verify_witness(g, result.witness),
    }
    if args.count:
        report["natural_orientation_count"] = count_natural_orientations(
            g, config.get("counting.max_edges", 12)
        )
    return report, result.found


def run_sweep(args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    max_vertices = args.max_vertices if args.max_vertices is not None else config.get("sweep.max_vertices", 7)
    workers = args.workers if args.workers is not None else config.get("sweep.workers", 1)
    _log(f"{max_vertices} 頂点以下の連結グラフで自然な向き付けを探します（並列数: {workers}）")
    sweep = conjecture_sweep(
        max_vertices,
        method=args.method,
        workers=workers,
        cycle_cap=config.get("search.cycle_cap", 20),
        max_b1=config.get("search.max_b1", 4),
        verbose=True,
    )
    if sweep.failures:
        _log(f"自然な向き付けが見つからないグラフがあります: {len(sweep.failures)} 個")
    return {"sweep": sweep, "all_succeeded": sweep.all_succeeded}, sweep.all_succeeded


def verify_all(g: Graph, seed: int, config: Config) -> Dict[str, Dict[str, object]]:
    """
    全ての定理の証明書をグラフに対して実行

    前提を満たさない証明書は skipped に理由を書いて成立扱いにする。

    Returns:
        証明書名 → {"holds", "certificate" または "skipped"}
    """
    rng = random.Random(seed)
    whole = full_subgraph(g)
    b0, b1 = betti_numbers(g)
    checks: Dict[str, Dict[str, object]] = {}

    def record(name: str, run: Callable[[], object], holds: Callable[[object], bool]) -> None:
        _log(f"{name} を検証中...")
        certificate = run()
        checks[name] = {"holds": holds(certificate), "certificate": certificate}

    def skip(name: str, reason: str) -> None:
        checks[name] = {"holds": True, "skipped": reason}

    f = random_vertex_form(g, rng)
    h = random_vertex_form(g, rng)
    c = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
    first, second = random_subgraph(g, rng), random_subgraph(g, rng)
    omega = random_edge_form(g, rng)

    record("hodge", lambda: hodge_decomposition(g), lambda x: x.holds)
    record("stokes", lambda: stokes_check(whole, None, f), lambda x: x.holds)
    record("orientation_reversal", lambda: orientation_reversal_check(whole, None, f), lambda x: x.holds)
    record("linearity", lambda: linearity_check(whole, None, c, f, h), lambda x: x.holds)
    record("additivity", lambda: integral_additivity_check(first, second, None, f, omega), lambda x: x.holds)
    record("cycle_forest_minimality", lambda: verify_minimality(g), lambda x: x.holds)

    if g.vertex_count == 0:
        for name in ("aut_restriction", "h0_kernel", "isomorphic_components", "h1_kernel", "kernel_restriction"):
            skip(name, "empty graph")
    else:
        group = automorphism_group(g)
        record("aut_restriction", lambda: aut_restriction_check(g, group), lambda x: x.holds)
        record("h0_kernel", lambda: kernel_characterization_h0(g, group), lambda x: x.agree)
        record("isomorphic_components", lambda: isomorphic_components_check(g, group), lambda x: x.holds)
        if b1 >= 1:
            record("h1_kernel", lambda: kernel_characterization_h1(g, group), lambda x: x.agree)
            record("kernel_restriction", lambda: kernel_restriction_check(g, group), lambda x: x.holds)
        else:
            skip("h1_kernel", "b1 = 0")
            skip("kernel_restriction", "b1 = 0")
        if (b0, b1) == (1, 1):
            record("b1_one_classification", lambda: classify_b1_one(g), lambda x: True)
        if is_trivial_kernel_case(g):
            record("trivial_kernel", lambda: len(action_kernel(g, 1, group)), lambda x: x == 1)
        else:
            skip("trivial_kernel", "not (connected, min valency >= 2, b1 >= 2)")
        if b0 == 1 and b1 >= 2:
            record("kernel_interpretation", lambda: kernel_interpretation(g, group), lambda x: x.holds)
        else:
            skip("kernel_interpretation", "not (connected, b1 >= 2)")
        record(
            "splitting",
            lambda: splitting_verification(g, group),
            lambda x: x.holds if x.hypotheses_met else True,
        )

    a, b = random_cover(g, rng)
    record("mv_short_sequence", lambda: short_sequence_check(g, a, b), lambda x: x.holds)
    record("mv_long_sequence", lambda: long_sequence_check(g, a, b), lambda x: x.holds)
    record("mv_lift_independence", lambda: lift_independence_check(g, a, b), lambda x: x)
    record(
        "natural_orientation",
        lambda: find_natural_orientation(
            g, cycle_cap=config.get("search.cycle_cap", 20), max_b1=config.get("search.max_b1", 4)
        ),
        lambda x: x.found and verify_witness(g, x.witness),
    )
    return checks


def run_verify_all(g: Graph, args: argparse.Namespace, config: Config) -> Tuple[Report, bool]:
    checks = verify_all(g, args.seed, config)
    failed = sorted(name for name, entry in checks.items() if not entry["holds"])
    if failed:
        _log(f"成立しなかった証明書: {', '.join(failed)}")
    return {"checks": checks, "failed": failed, "all_passed": not failed}, not failed


COMMANDS: Dict[str, Callable[[Graph, argparse.Namespace, Config], Tuple[Report, bool]]] = {
    "cohomology": run_cohomology,
    "aut": run_aut,
    "action": run_action,
    "decompose": run_decompose,
    "split": run_split,
    "integrate": run_integrate,
    "stokes": run_stokes,
    "hodge": run_hodge,
    "mv": run_mv,
    "natorient": run_natorient,
    "verify-all": run_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    """サブコマンドごとの引数を定義したパーサー"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', help='レポートの出力先（相対パスは OUTPUT_DIR 基準）')
    common.add_argument('--config', help='設定ファイルのパス')
    common.add_argument('--seed', type=int, help='乱数シード（省略時は RANDOM_SEED）')

    with_graph = argparse.ArgumentParser(add_help=False, parents=[common])
    with_graph.add_argument('graph', help='グラフファイル（n <頂点数> と u v [+|-] の行）')

    parser = argparse.ArgumentParser(
        description='有限単純グラフの離散ド・ラームコホモロジーと自己同型作用を厳密計算で検証する'
    )
    subparsers = parser.add_subparsers(dest='command', help='コマンド')
    subparsers.required = True

    p = subparsers.add_parser('cohomology', parents=[with_graph], help='Betti 数と調和代表元の基底')
    p.add_argument('--degree', type=int, choices=[0, 1], help='次数（省略時は両方）')

    subparsers.add_parser('aut', parents=[with_graph], help='自己同型群と正準形')

    p = subparsers.add_parser('action', parents=[with_graph], help='H⁰ / H¹ への誘導作用')
    p.add_argument('--degree', type=int, choices=[0, 1], help='次数（省略時は 1）')

    subparsers.add_parser('decompose', parents=[with_graph], help='サイクル・森分解')
    subparsers.add_parser('split', parents=[with_graph], help='核の解釈と分裂定理')

    for name, help_text in (('integrate', '頂点積分・辺積分'), ('stokes', 'ストークスの定理')):
        p = subparsers.add_parser(name, parents=[with_graph], help=help_text)
        p.add_argument('--form', help='頂点形式の値（カンマ区切りの有理数）')
        p.add_argument('--vertices', help='積分する誘導部分グラフの頂点（カンマ区切り、省略時は全体）')
        if name == 'integrate':
            p.add_argument('--edge-form', help='辺形式の座標（カンマ区切りの有理数）')

    subparsers.add_parser('hodge', parents=[with_graph], help='ホッジ分解')

    p = subparsers.add_parser('mv', parents=[with_graph], help='マイヤー・ヴィートリス完全系列')
    p.add_argument('--cover', help='被覆ファイル（A u v / B u v / A u の行、省略時はランダム）')
    p.add_argument('--lift', choices=LIFTS, default='zero', help='連結準同型の持ち上げ方')

    p = subparsers.add_parser('natorient', parents=[with_graph], help='自然な向き付けの探索')
    p.add_argument('--method', choices=METHODS, default='auto', help='探索方法')
    p.add_argument('--count', action='store_true', help='自然な向き付けの個数も数える（試験的）')

    p = subparsers.add_parser('sweep', parents=[common], help='小さな連結グラフ全てで自然な向き付けを探す')
    p.add_argument('--max-vertices', type=int, help=f'頂点数の上限（{EXHAUSTIVE_BOUND} 以下）')
    p.add_argument('--workers', type=int, help='並列プロセス数')
    p.add_argument('--method', choices=METHODS, default='auto', help='探索方法')

    subparsers.add_parser('verify-all', parents=[with_graph], help='全ての証明書を実行')
    return parser


def _output_path(out: str, config: Config) -> Path:
    path = Path(out)
    if path.is_absolute():
        return path
    return Path(config.get("output.default_dir", "./data")) / path


def main(argv: Optional[List[str]] = None) -> int:
    """
    メイン関数

    Returns:
        終了コード（0: 成功, 1: 検証失敗, 2: 使い方・入力の誤り）
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        config = Config(config_file=args.config) if args.config else Config()
        if args.seed is None:
            args.seed = config.get("random.seed", 0)
        if args.command == 'sweep':
            report, ok = run_sweep(args, config)
        else:
            g = parse_graph_file(read_text_file(args.graph))
            _log(f"グラフを読み込みました: 頂点 {g.vertex_count}, 辺 {g.edge_count}")
            report, ok = COMMANDS[args.command](g, args, config)
        data = to_serializable({"command": args.command, **report})
    except (ValueError, FileNotFoundError) as e:
        _log(f"エラー: {e}")
        return EXIT_USAGE

    if args.out:
        path = _output_path(args.out, config)
        write_json_file(data, path)
        _log(f"レポートを書き出しました: {path}")
    else:
        sys.stdout.write(dump_json(data))
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
