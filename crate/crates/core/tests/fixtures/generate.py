"""Regenerates the FASTA fixtures and golden PGM images.

The sequences come from seeded second-order Markov chains with different
compositional biases. The golden images are computed here by plain
floating-point chaos game and binning, independently of the Rust code.

    python3 generate.py
"""

import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
LENGTH = 100_000
ALPHABET = "ACGT"
CORNERS = {"A": (-1.0, -1.0), "C": (-1.0, 1.0), "G": (1.0, 1.0), "T": (1.0, -1.0)}


def base_weights(gc):
    at = (1.0 - gc) / 2.0
    return {"A": at, "C": gc / 2.0, "G": gc / 2.0, "T": at}


def markov(rng, n, weight_fn):
    seq = [rng.choice(ALPHABET), rng.choice(ALPHABET)]
    while len(seq) < n:
        w = weight_fn(seq[-2], seq[-1])
        seq.append(rng.choices(ALPHABET, weights=[w[a] for a in ALPHABET])[0])
    return "".join(seq)


def gc_rich(a, b):
    return base_weights(0.62)


def at_rich(a, b):
    w = base_weights(0.31)
    if b == "A":
        w["A"] *= 1.4
    return w


def cpg_depleted(a, b):
    w = base_weights(0.42)
    if b == "C":
        w["G"] *= 0.2
    return w


def dinucleotide_skew(a, b):
    w = base_weights(0.5)
    w[{"A": "C", "C": "T", "G": "A", "T": "G"}[b]] *= 2.5
    if a == b:
        w[b] *= 0.5
    return w


def repeat_rich(rng, n):
    out = []
    while sum(map(len, out)) < n:
        if rng.random() < 0.3:
            unit = "".join(rng.choice(ALPHABET) for _ in range(rng.randint(2, 6)))
            out.append(unit * rng.randint(5, 40))
        else:
            out.append(markov(rng, rng.randint(200, 2000), lambda a, b: base_weights(0.45)))
    return "".join(out)[:n]


FIXTURES = [
    ("gc_rich", lambda rng: markov(rng, LENGTH, gc_rich)),
    ("at_rich", lambda rng: markov(rng, LENGTH, at_rich)),
    ("cpg_depleted", lambda rng: markov(rng, LENGTH, cpg_depleted)),
    ("dinucleotide_skew", lambda rng: markov(rng, LENGTH, dinucleotide_skew)),
    ("repeat_rich", lambda rng: repeat_rich(rng, LENGTH)),
]


def write_fasta(path, name, seq):
    with open(path, "w") as f:
        f.write(f">{name} synthetic fragment length={len(seq)}\n")
        for i in range(0, len(seq), 70):
            f.write(seq[i : i + 70] + "\n")


def occupancy_pgm(seq, r):
    side = 1 << r
    pixels = bytearray([255]) * (side * side)
    x = y = 0.0
    for m, a in enumerate(seq, start=1):
        cx, cy = CORNERS[a]
        x = (x + cx) / 2.0
        y = (y + cy) / 2.0
        if m >= r:
            col = min(int((x + 1.0) / 2.0 * side), side - 1)
            row = min(int((1.0 - y) / 2.0 * side), side - 1)
            pixels[row * side + col] = 0
    return f"P5\n{side} {side}\n255\n".encode() + bytes(pixels)


def main():
    for i, (name, make) in enumerate(FIXTURES):
        rng = random.Random(1000 + i)
        seq = make(rng)
        assert len(seq) == LENGTH
        write_fasta(HERE / f"{name}.fasta", name, seq)
    (HERE / "golden_acg_r1.pgm").write_bytes(occupancy_pgm("ACG", 1))
    gc = "".join(l.strip() for l in open(HERE / "gc_rich.fasta") if not l.startswith(">"))
    (HERE / "golden_gc_rich_r8.pgm").write_bytes(occupancy_pgm(gc, 8))


if __name__ == "__main__":
    main()
