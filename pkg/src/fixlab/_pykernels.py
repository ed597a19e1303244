"""Reference kernels on integer-scaled data (arbitrary precision)."""


def max_pairwise_l1(rows, weights):
    best, bi, bj = 0, 0, 0
    n = len(rows)
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            rj = rows[j]
            s = 0
            for w, a, b in zip(weights, ri, rj):
                s += w * abs(a - b)
            if s > best:
                best, bi, bj = s, i, j
    return best, bi, bj


def center_max_l1(centers, rows, weights):
    out = []
    for c in centers:
        worst = 0
        for r in rows:
            s = 0
            for w, a, b in zip(weights, c, r):
                s += w * abs(a - b)
            if s > worst:
                worst = s
        out.append(worst)
    return out


def first_return(p, q, budget):
    x = 0
    for n in range(1, budget + 1):
        x = (x + p) % q
        if x == 0:
            return n
    return -1
