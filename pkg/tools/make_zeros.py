"""Regenerate the bundled table of zeta-zero ordinates with mpmath.

Usage: python tools/make_zeros.py [count] [output]
"""

import sys
from pathlib import Path

import mpmath


def main(argv):
    count = int(argv[1]) if len(argv) > 1 else 200
    out = Path(argv[2]) if len(argv) > 2 else Path(__file__).resolve().parents[1] / "src/zetarecip/data/zeros.txt"
    mpmath.mp.dps = 25
    lines = [f"# ordinates of the first {count} nontrivial zeta zeros, mpmath.zetazero at 25 digits"]
    for n in range(1, count + 1):
        lines.append(mpmath.nstr(mpmath.zetazero(n).imag, 20, strip_zeros=False))
    out.write_text("\n".join(lines) + "\n", encoding="ascii")


if __name__ == "__main__":
    main(sys.argv)
