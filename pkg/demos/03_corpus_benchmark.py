"""How image structure drives the compression ratio.

Generates one seeded image per generator kind, benchmarks them and writes the
CSV next to this script.  Flat regions give long chains and good ratios;
noise gives one chain per pixel and output larger than the input.

Run: python demos/03_corpus_benchmark.py
"""
from pathlib import Path

from crackcode.bench import corpus_from_specs, run_bench, to_csv
from crackcode.synthetic import KINDS, SyntheticSpec

specs = [SyntheticSpec(100, 100, depth=8, kind=kind, region_count=8, seed=42, name=kind) for kind in KINDS]
rows = run_bench(corpus_from_specs(specs), repeats=5)

print(f"{'image':<10}{'original':>10}{'crk1':>10}{'crk1 %':>9}{'rle %':>9}{'chains':>8}{'time s':>9}")
for r in rows:
    print(f"{r['name']:<10}{r['original_size']:>10}{r['compressed_size']:>10}{r['compression_pct']:>9}"
          f"{r['rle_pct']:>9}{r['chain_count']:>8}{r['time_s']:>9}")

out = Path(__file__).with_name("corpus_benchmark.csv")
out.write_text(to_csv(rows))
print(f"\nwrote {out}")
