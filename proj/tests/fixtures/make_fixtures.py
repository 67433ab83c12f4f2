#!/usr/bin/env python3
# Copyright (c) 2026 The nc-coreset Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the checked-in test fixtures.

The .nceb files are packed with `struct` directly from the format
description, so they act as an independent writer for the C++ loader. The
metric and k-means reference values come from numpy / scikit-learn and from
exhaustive enumeration. Run from this directory:

    python3 make_fixtures.py
"""

import itertools
import json
import math
import struct
import wave
from pathlib import Path

import numpy as np
from sklearn.metrics import average_precision_score, roc_auc_score

HERE = Path(__file__).resolve().parent


def record(label, alg, sample_id, values, n_floats=None):
    raw = sample_id.encode("utf-8")
    out = struct.pack("<BHI", label, alg, len(raw)) + raw
    for v in values[: n_floats if n_floats is not None else len(values)]:
        out += struct.pack("<f", v) if isinstance(v, float) else struct.pack("<I", v)
    return out


def table(dim, records, magic=b"NCEB", version=1, count=None):
    head = magic + struct.pack("<IIQ", version, dim,
                               len(records) if count is None else count)
    return head + b"".join(records)


def write(name, data):
    (HERE / name).write_bytes(data)


def nceb_fixtures():
    golden = [
        record(0, 0, "real-0", [0.5, -1.25, 3.0]),
        # U+03B1 in the id; -0.0 must survive bit-exactly.
        record(1, 3, "fake-α", [1e-3, 2.5e10, -0.0]),
        # 0x00000001 is the smallest positive subnormal float.
        record(1, 1, "fake-1", [0x00000001, 1.0, 7.0]),
    ]
    write("golden_small.nceb", table(3, golden))
    write("golden_empty.nceb", table(4, []))

    ok = record(0, 0, "a", [1.0] * 8)
    write("bad_magic.nceb", table(8, [ok], magic=b"NCEX"))
    write("bad_version.nceb", table(8, [ok], version=2))
    write("truncated.nceb", table(8, [ok, ok.replace(b"a", b"b")])[:-10])
    write("count_too_large.nceb", table(8, [ok], count=5))
    write("short_record.nceb",
          table(8, [record(0, 0, "a", [1.0] * 8, n_floats=7),
                    record(0, 0, "b", [2.0] * 8)]))
    write("short_last_record.nceb",
          table(8, [record(0, 0, "a", [1.0] * 8, n_floats=7)]))
    write("nonfinite.nceb", table(2, [record(0, 0, "a", [1.0, math.nan])]))
    write("duplicate_id.nceb",
          table(2, [record(0, 0, "a", [1.0, 2.0]),
                    record(1, 1, "a", [3.0, 4.0])]))
    write("real_with_algorithm.nceb",
          table(2, [record(0, 4, "a", [1.0, 2.0])]))
    write("bad_label.nceb", table(2, [record(2, 0, "a", [1.0, 2.0])]))


def csv_fixtures():
    (HERE / "scores_golden.csv").write_text(
        "sample_id,label,score\n"
        "id1,real,0.2\n"
        "id2,fake,0.75\n"
        "id3,fake,1e-3\n")
    (HERE / "scores_bad_float.csv").write_text(
        "sample_id,label,score\nid1,real,abc\n")
    (HERE / "scores_bad_label.csv").write_text(
        "sample_id,label,score\nid1,bonafide,0.2\n")
    (HERE / "scores_bad_columns.csv").write_text(
        "sample_id,label,score\nid1,real\n")
    (HERE / "scores_only_real.csv").write_text(
        "sample_id,label,score\nr1,real,0.2\nr2,real,0.4\n")


def write_wav(path, samples, rate=16000, channels=1, width=2):
    with wave.open(str(path), "wb") as w:
        w.setnchannels(channels)
        w.setsampwidth(width)
        w.setframerate(rate)
        ints = [max(-32768, min(32767, int(round(s * 32767)))) for s in samples]
        w.writeframes(struct.pack("<%dh" % len(ints), *ints))


def audio_fixtures():
    d = HERE / "audio"
    d.mkdir(exist_ok=True)
    rate = 16000
    write_wav(d / "sine1k.wav",
              [0.5 * math.sin(2 * math.pi * 1000 * n / rate)
               for n in range(rate)])
    write_wav(d / "chirp.wav",
              [0.3 * math.sin(2 * math.pi * (200 + 400 * n / rate) * n / rate)
               for n in range(4 * rate)])
    write_wav(d / "silence.wav", [0.0] * (rate // 2))
    write_wav(d / "stereo.wav", [0.1] * 2000, channels=2)
    write_wav(d / "rate8k.wav", [0.1] * 2000, rate=8000)
    (d / "manifest.csv").write_text(
        "path,label,algorithm_id\n"
        "silence.wav,real,0\n"
        "sine1k.wav,fake,2\n"
        "chirp.wav,fake,5\n")
    (d / "manifest_stereo.csv").write_text(
        "path,label,algorithm_id\nstereo.wav,real,0\n")


def eer_polyline(y, s):
    order = np.argsort(-s, kind="stable")
    y, s = y[order], s[order]
    p, n = y.sum(), len(y) - y.sum()
    pts = [(0.0, 0.0)]
    tp = fp = 0
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            tp += y[j]
            fp += 1 - y[j]
            j += 1
        pts.append((fp / n, tp / p))
        i = j
    for a, b in zip(pts, pts[1:]):
        ga, gb = a[0] - (1 - a[1]), b[0] - (1 - b[1])
        if gb == 0:
            return b[0]
        if ga < 0 < gb:
            t = -ga / (gb - ga)
            return a[0] + t * (b[0] - a[0])
    raise AssertionError("no crossing")


def metric_fixtures():
    rng = np.random.default_rng(20260101)
    cases = []
    for size in (5, 17, 64, 250):
        y = (rng.random(size) < 0.4).astype(int)
        y[0], y[1] = 1, 0
        s = rng.random(size) + 0.4 * y  # continuous, so no ties
        ids = ["s%04d" % i for i in range(size)]
        ap_fake = average_precision_score(y, s)
        ap_real = average_precision_score(1 - y, -s)
        cases.append({
            "sample_id": ids,
            "fake": y.tolist(),
            "score": s.tolist(),
            "auc": roc_auc_score(y, s),
            "eer_roc": eer_polyline(y, s),
            "map": (ap_fake + ap_real) / 2,
        })
    (HERE / "oracle_metrics.json").write_text(json.dumps(cases, indent=1) + "\n")


def kmeans_fixtures():
    rng = np.random.default_rng(777)
    cases = []
    for n, k in [(6, 2), (8, 2), (9, 3), (10, 3), (7, 3)]:
        pts = rng.normal(size=(n, 2)) + rng.integers(0, 3, size=(n, 1)) * 4.0
        best = math.inf
        for assign in itertools.product(range(k), repeat=n):
            if len(set(assign)) != k:
                continue
            a = np.array(assign)
            inertia = sum(((pts[a == c] - pts[a == c].mean(0)) ** 2).sum()
                          for c in range(k))
            best = min(best, inertia)
        cases.append({"k": k, "points": pts.tolist(), "optimum": best})
    (HERE / "oracle_kmeans.json").write_text(json.dumps(cases, indent=1) + "\n")


if __name__ == "__main__":
    nceb_fixtures()
    csv_fixtures()
    audio_fixtures()
    metric_fixtures()
    kmeans_fixtures()
