#!/usr/bin/env python3
"""Error against the sample count M at a fixed enriched frame.

Polynomial degree 40 with five log elements (46 elements in total).
Gauss-Legendre points reach the plateau right after M exceeds the
element count; Chebyshev points need noticeably more oversampling.
"""

import sys
from pathlib import Path

from frameapprox.cli import main

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
out_dir.mkdir(parents=True, exist_ok=True)

common = ["--frame", "onbk", "--K", "5", "--N", "46", "--M", "40:10:400",
          "--eps", "1e-13", "--probes", "0.2,0.5,0.9"]
codes = [
    main(["oversampling", "--nodes", "legendre", *common,
          "--out", str(out_dir / "oversampling_legendre.csv")]),
    main(["oversampling", "--nodes", "chebyshev", *common,
          "--out", str(out_dir / "oversampling_chebyshev.csv")]),
]
sys.exit(max(codes))
