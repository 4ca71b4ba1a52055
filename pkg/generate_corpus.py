"""
Generate graph6 corpus files for scans and tests.
"""

import argparse
from pathlib import Path
from typing import Dict, Iterable, Optional

import numpy as np

from enumeration import KNOWN_COUNTS, generate_all
from graph_core import random_graph, to_graph6


def generate_corpus(orders: Iterable[int], output_dir: str = "corpus") -> Dict[int, Path]:
    """
    Write every non-isomorphic graph of each order to its own graph6 file.

    Args:
        orders: Orders to enumerate (1 to 10)
        output_dir: Directory to save the files

    Returns:
        Mapping from order to the file written
    """
    output_path = Path(output_dir)
    output_path.mkdir(parents=True, exist_ok=True)

    files = {}
    for n in orders:
        corpus_file = output_path / f"graphs_n{n}.g6"
        count = 0
        with open(corpus_file, 'w') as f:
            for g in generate_all(n):
                f.write(to_graph6(g) + "\n")
                count += 1
        print(f"Created {corpus_file} ({count} graphs)")
        files[n] = corpus_file
    return files


def generate_random_corpus(n: int, count: int, p: float = 0.5, seed: Optional[int] = None,
                           output_dir: str = "corpus") -> Path:
    """
    Write `count` random G(n, p) graphs (isomorphic duplicates possible).
    """
    output_path = Path(output_dir)
    output_path.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    corpus_file = output_path / f"random_n{n}_p{p:g}.g6"
    with open(corpus_file, 'w') as f:
        for _ in range(count):
            f.write(to_graph6(random_graph(n, p, rng)) + "\n")
    print(f"Created {corpus_file} ({count} graphs)")
    return corpus_file


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Write graph6 corpus files")
    parser.add_argument('orders', type=int, nargs='*', default=[4, 5, 6, 7],
                        help='Orders to enumerate (default: 4 5 6 7)')
    parser.add_argument('--output-dir', type=str, default='corpus', help='Output directory (default: corpus)')
    parser.add_argument('--random', type=int, default=0, help='Also write this many random graphs per order')
    parser.add_argument('--edge-probability', type=float, default=0.5, help='Edge probability for random graphs')
    parser.add_argument('--seed', type=int, default=None, help='Random seed')
    args = parser.parse_args()

    print("Generating graph6 corpus...")
    generate_corpus(args.orders, args.output_dir)
    for n in args.orders:
        if args.random:
            generate_random_corpus(n, args.random, args.edge_probability, args.seed, args.output_dir)
    print("\nCorpus generated successfully!")
    print("Expected class counts: " + ", ".join(f"n={n}: {KNOWN_COUNTS[n]}" for n in args.orders
                                                  if n in KNOWN_COUNTS))
