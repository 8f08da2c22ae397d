"""File outputs for check runs: verdict lines, raw samples, figures.

A run directory receives one ``verdicts.jsonl`` (one JSON object per check),
one raw-sample file per check (CSV by default, JSON on request), one
diagnostic PNG per check (ECDFs of every sample column), and the serialized
run configuration.  Sample files are byte-identical across reruns of the
same seed; the verdict lines carry wall-clock runtimes and are not.
"""

from __future__ import annotations

import csv
import json
import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["write_run", "write_samples_csv", "write_samples_json",
           "render_figure"]


def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return ""
    return "%.10g" % x


def write_samples_csv(samples: dict, path: str) -> None:
    """Columns side by side, shorter columns padded with empty fields."""
    cols = list(samples)
    arrays = [np.asarray(samples[c]).ravel() for c in cols]
    nrows = max((a.size for a in arrays), default=0)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for i in range(nrows):
            w.writerow([_fmt(a[i]) if i < a.size else "" for a in arrays])


def write_samples_json(samples: dict, path: str) -> None:
    payload = {k: [None if (isinstance(v, float) and math.isnan(v)) else v
                   for v in map(float, np.asarray(arr).ravel())]
               for k, arr in samples.items()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def render_figure(result, path: str) -> None:
    """One axes of empirical CDFs, one curve per sample column."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for name, arr in result.samples.items():
        x = np.asarray(arr, dtype=float).ravel()
        x = np.sort(x[np.isfinite(x)])
        if x.size == 0:
            continue
        if x.size > 5000:  # thin dense curves; endpoints kept
            idx = np.linspace(0, x.size - 1, 5000).astype(int)
            x = x[idx]
            y = (idx + 1) / np.asarray(arr).size
        else:
            y = np.arange(1, x.size + 1) / x.size
        ax.step(x, y, where="post", label=name, lw=1.0)
    rep = result.report
    verdict = "pass" if rep.passed else "FAIL"
    ax.set_title("%s [%s]  statistic=%.4g" % (rep.check_id, verdict,
                                              rep.statistic))
    ax.set_xlabel("value")
    ax.set_ylabel("empirical CDF")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def write_run(results, config: dict, outdir: str, fmt: str = "csv") -> list:
    """Write every artifact for a finished run; returns the file paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    vpath = os.path.join(outdir, "verdicts.jsonl")
    with open(vpath, "w", encoding="utf-8") as fh:
        for res in results:
            fh.write(res.report.to_json() + "\n")
    paths.append(vpath)
    cpath = os.path.join(outdir, "config.json")
    with open(cpath, "w", encoding="utf-8") as fh:
        json.dump(config, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths.append(cpath)
    for res in results:
        stem = os.path.join(outdir, res.report.check_id)
        if fmt == "json":
            spath = stem + ".json"
            write_samples_json(res.samples, spath)
        else:
            spath = stem + ".csv"
            write_samples_csv(res.samples, spath)
        paths.append(spath)
        fpath = stem + ".png"
        render_figure(res, fpath)
        paths.append(fpath)
    return paths
