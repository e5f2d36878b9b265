#!/usr/bin/env python3
"""Hash-count top-k and brute-force TF-IDF cosine oracles.

Phrases come from the hand-normalized gold file, so the oracle never runs a
normalizer. Writes tests/fixtures/ingredients/{topk50,attribution3}.json.
"""

import json
import math
import random
from collections import Counter
from pathlib import Path

DIR = Path(__file__).resolve().parent.parent / "fixtures" / "ingredients"


def gold():
    rows = []
    for line in (DIR / "normalize.tsv").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        raw, phrase, _head = line.split("\t")
        rows.append((raw, phrase))
    return rows


def topk(rng):
    rows = gold()
    recipes = []
    counts = Counter()
    for _ in range(50):
        picked = rng.sample(rows, rng.randint(3, 10))
        recipes.append([raw for raw, _ in picked])
        counts.update({phrase for _, phrase in picked})
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return {"recipes": recipes, "ranked": [[p, n] for p, n in ranked]}


WORDS = ["salt", "rice", "onion", "garlic", "tomato", "cumin", "saffron", "lemon", "butter", "yogurt",
         "mint", "lamb", "chicken", "beef", "ginger", "basil", "paprika", "flour", "sugar", "egg",
         "potato", "carrot", "cinnamon", "coriander", "chili", "olive oil", "soy sauce", "coconut milk",
         "fish sauce", "noodle", "tofu", "cheese", "cream", "honey", "vinegar"]


def unit(vec):
    norm = math.sqrt(sum(v * v for v in vec.values()))
    return {k: v / norm for k, v in vec.items() if v > 0} if norm > 0 else {}


def cos(a, b):
    return sum(v * b.get(k, 0.0) for k, v in a.items())


def attribution(rng):
    countries = ["IN", "JP", "MA"]
    docs = {}
    human = {}
    for c in countries:
        human[c] = [rng.sample(WORDS, rng.randint(4, 9)) for _ in range(4)]
        docs[c] = Counter(w for r in human[c] for w in r)
    df = Counter(w for d in docs.values() for w in d)
    idf = {w: math.log2(len(countries) / n) for w, n in df.items()}
    profiles = {c: unit({w: n * idf[w] for w, n in d.items()}) for c, d in docs.items()}
    queries = []
    for i in range(40):
        words = [rng.choice(WORDS) for _ in range(rng.randint(1, 8))]
        vec = unit({w: n * idf[w] for w, n in Counter(words).items() if w in idf})
        if not vec:
            queries.append({"id": f"q{i}", "ingredients": words, "best": "", "similarity": 0.0})
            continue
        best, sim = "", -1.0
        for c in sorted(countries):
            s = cos(vec, profiles[c])
            if s > sim:
                best, sim = c, s
        if sim <= 0:
            best, sim = "", 0.0
        queries.append({"id": f"q{i}", "ingredients": words, "best": best, "similarity": sim})
    return {"human": human, "idf": idf, "queries": queries}


def main():
    rng = random.Random(20240611)
    (DIR / "topk50.json").write_text(json.dumps(topk(rng), indent=1) + "\n")
    (DIR / "attribution3.json").write_text(json.dumps(attribution(rng), indent=1) + "\n")


if __name__ == "__main__":
    main()
