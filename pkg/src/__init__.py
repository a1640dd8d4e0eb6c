"""
グラフ上の離散ド・ラームコホモロジー パッケージ
"""
