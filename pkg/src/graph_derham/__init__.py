"""
有限単純グラフ上の離散ド・ラームコホモロジーと自己同型作用の検証モジュール
"""
