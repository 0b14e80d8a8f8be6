"""Pure-Python versions of the compiled kernels.

Same signatures and results as ``_kernels.pyx``; used when the extension is
not built or when ``DDFKIT_PURE_PYTHON=1``.
"""
import numpy as np


def pair_difference_counts(labels, nclasses):
    labels = np.asarray(labels, dtype=np.int64)
    v = len(labels)
    out = np.zeros((nclasses, nclasses, v), dtype=np.int64)
    members = [(a, int(la)) for a, la in enumerate(labels) if la >= 0]
    for a, la in members:
        for b, lb in members:
            if a != b:
                out[la, lb, (a - b) % v] += 1
    return out


def correlation_table(x, y):
    x = [int(s) for s in x]
    y = [int(s) for s in y]
    n = len(x)
    return np.array(
        [sum(1 for i in range(n) if x[i] == y[(i + t) % n]) for t in range(n)],
        dtype=np.int64,
    )


def relabel_first_occurrence(labels):
    seen = {}
    out = []
    for lab in labels:
        lab = int(lab)
        if lab < 0:
            out.append(-1)
        else:
            out.append(seen.setdefault(lab, len(seen)))
    return np.array(out, dtype=np.int64)


def affine_search(labels, target, multipliers, offsets):
    labels = [int(x) for x in labels]
    target = [int(x) for x in target]
    v = len(labels)
    for a in multipliers:
        a = int(a)
        for b in offsets:
            b = int(b)
            img = [0] * v
            for i, lab in enumerate(labels):
                img[(a * i + b) % v] = lab
            seen = {}
            for i, lab in enumerate(img):
                r = -1 if lab < 0 else seen.setdefault(lab, len(seen))
                if r != target[i]:
                    break
            else:
                return a, b
    return -1, -1


def min_pairwise_distance(words):
    rows = [tuple(int(s) for s in w) for w in words]
    n = len(rows[0]) if rows else 0
    best = n + 1
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            d = sum(1 for x, y in zip(rows[i], rows[j]) if x != y)
            best = min(best, d)
    return best
