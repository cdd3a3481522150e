"""Slow, obviously-correct reference computations used only by the tests."""

from itertools import combinations, product


def pt_by_definition(a, p, q):
    """PT[(i,j),(k,l)] = A[(i,l),(k,j)], looping over all four indices."""
    n = p * q
    f = lambda i, j: i * q + j  # noqa: E731
    out = [[None] * n for _ in range(n)]
    for i, j, k, l in product(range(p), range(q), range(p), range(q)):
        out[f(i, j)][f(k, l)] = a[f(i, l)][f(k, j)]
    return out


def det_cofactor(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for c in range(n):
        minor = [row[:c] + row[c + 1 :] for row in m[1:]]
        total += (-1) ** c * m[0][c] * det_cofactor(minor)
    return total


def ns_brute(n):
    count = 0
    for bits in product((0, 1), repeat=n * n):
        m = [bits[r * n : (r + 1) * n] for r in range(n)]
        if all(sum(m[i]) == sum(m[j][i] for j in range(n)) for i in range(n)):
            count += 1
    return count


def is_bipartite(n, edges):
    color = [None] * n
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for s in range(n):
        if color[s] is not None:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if color[v] is None:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def bipartite_count(n, i):
    pairs = list(combinations(range(n), 2))
    return sum(is_bipartite(n, es) for es in combinations(pairs, i))


def mni_brute(n, i):
    pairs = list(combinations(range(n), 2))
    count = 0
    for es in combinations(pairs, i):
        deg = [0] * n
        for u, v in es:
            deg[u] += 1
            deg[v] += 1
        count += 1 in deg
    return count


def permute(a, perm):
    """P a P^T with P[perm[k]][k] = 1, via explicit matrix products."""
    n = len(a)
    P = [[1 if perm[c] == r else 0 for c in range(n)] for r in range(n)]
    mm = lambda x, y: [[sum(x[i][t] * y[t][j] for t in range(n)) for j in range(n)] for i in range(n)]  # noqa: E731
    Pt = [list(r) for r in zip(*P)]
    return mm(mm(P, [list(r) for r in a]), Pt)
