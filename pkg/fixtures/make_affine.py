#!/usr/bin/env python3
"""Emit the embedding file of an affine SL2/mu_n-embedding.

Usage: make_affine.py N H L   (L a rational like -7/2)

The G-stable divisor is (x0, H, L); the slope L/H must satisfy
-1/2 - 1/(2*nbar) < L/H <= -1/2 with gcd(H, u*L) = 1.
"""
import json
import sys

from sl2cox.embedding import affine_embedding, embedding_to_dict


def main():
    if len(sys.argv) != 4:
        print(__doc__, file=sys.stderr)
        return 3
    n, h = int(sys.argv[1]), int(sys.argv[2])
    from fractions import Fraction

    l = Fraction(sys.argv[3])
    E = affine_embedding(n, h, l)
    violations = E.validate()
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        return 1
    print(json.dumps(embedding_to_dict(E), indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
