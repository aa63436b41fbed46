import json
from pathlib import Path

import numpy as np

from holopw.fourier.fourier import Space, character_series, random_series
from holopw.schemas.schemas import FourierSeriesFile

out_dir = Path("data")
out_dir.mkdir(exist_ok=True)

rng = np.random.default_rng(2024)

# 1. Characters chi_(n) on SU(2), as L2(K) series
for n in range(3):
    series = character_series("A1", (n,))
    path = out_dir / f"chi_{n}.json"
    path.write_text(json.dumps(FourierSeriesFile.from_series(series).model_dump(mode="json"), indent=2))

# 2. Holomorphic characters chi^C_(n) in HL2 at t = 1
for n in range(3):
    series = character_series("A1", (n,), Space.HL2, 1.0)
    path = out_dir / f"chi_holo_{n}.json"
    path.write_text(json.dumps(FourierSeriesFile.from_series(series).model_dump(mode="json"), indent=2))

# 3. A random SU(2) series up to level 3 and a random SU(3) series up to (1, 1)
mixed = random_series("A1", [(k,) for k in range(4)], rng)
(out_dir / "random_su2.json").write_text(FourierSeriesFile.from_series(mixed).model_dump_json(indent=2))

su3 = random_series("A2", [(0, 0), (1, 0), (0, 1), (1, 1)], rng, Space.HL2, 0.5)
(out_dir / "random_su3_holo.json").write_text(FourierSeriesFile.from_series(su3).model_dump_json(indent=2))

print(f"Wrote example series to {out_dir}/")
print("Try: python -m holopw.main transform --which h --in data/chi_holo_1.json")
