"""
設定管理モジュール
"""
import os
from typing import Any, Optional
from dotenv import load_dotenv


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"環境変数 {name} は整数で指定してください: {value}")


class Config:
    """設定管理クラス"""

    def __init__(self, config_file: Optional[str] = None):
        """
        設定を初期化

        Args:
            config_file: 設定ファイルのパス（指定しない場合は.envを使用）
        """
        if config_file:
            if not os.path.exists(config_file):
                raise FileNotFoundError(f"設定ファイルが見つかりません: {config_file}")
            load_dotenv(config_file, override=True)
        else:
            load_dotenv()

        self._config = {
            "output": {
                "default_dir": os.getenv("OUTPUT_DIR", "./data"),
            },
            "sweep": {
                "max_vertices": _int_env("SWEEP_MAX_VERTICES", 7),
                "workers": _int_env("SWEEP_WORKERS", 1),
            },
            "search": {
                "cycle_cap": _int_env("SEARCH_CYCLE_CAP", 20),
                "max_b1": _int_env("SEARCH_MAX_B1", 4),
            },
            "counting": {
                "max_edges": _int_env("COUNTING_MAX_EDGES", 12),
            },
            "random": {
                "seed": _int_env("RANDOM_SEED", 0),
            },
        }

    def get(self, key: str, default: Any = None) -> Any:
        """
        設定値を取得

        Args:
            key: 設定キー（ドット記法で階層指定可能）
            default: デフォルト値

        Returns:
            設定値
        """
        keys = key.split(".")
        value = self._config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value
