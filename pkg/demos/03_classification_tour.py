"""Separability and compactness verdicts for the built-in models, with reasons."""
from nba_lab import classify, justify
from nba_lab.catalog import MODELS

for name in sorted(MODELS):
    whole, fin = classify(MODELS[name]())
    print(f"== {name}")
    print(justify(whole))
    print(justify(fin))
    print()
