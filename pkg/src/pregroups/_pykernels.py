"""Pure-Python versions of the integer kernels.

Elements are carrier indices. ``prod[a][b]`` is the index of ``ab`` or -1
when ``(a, b)`` is not in D. Every function here has a twin with the same
signature and results in ``_ckernels.pyx``.
"""

NAME = "python"


class Tables:
    __slots__ = ("n", "prod", "inv", "one")

    def __init__(self, prod, inv, one):
        self.n = len(inv)
        self.prod = [list(row) for row in prod]
        self.inv = list(inv)
        self.one = one


def make_tables(prod, inv, one):
    return Tables(prod, inv, one)


def reduce_left(t, word):
    """Leftmost-first reduction; the result is a reduced word."""
    prod = t.prod
    out = []
    for x in word:
        out.append(x)
        while len(out) > 1:
            z = prod[out[-2]][out[-1]]
            if z < 0:
                break
            out.pop()
            out[-1] = z
    if not out:
        out.append(t.one)
    return out


def reduce_right(t, word):
    """Rightmost-first reduction."""
    prod = t.prod
    out = []
    for x in reversed(word):
        out.append(x)
        while len(out) > 1:
            z = prod[out[-1]][out[-2]]
            if z < 0:
                break
            out.pop()
            out[-1] = z
    if not out:
        out.append(t.one)
    out.reverse()
    return out


def is_reduced(t, word):
    prod = t.prod
    for i in range(len(word) - 1):
        if prod[word[i]][word[i + 1]] >= 0:
            return False
    return True


def interleave(t, c, a):
    """c * a, or None when some required product is undefined."""
    prod, inv = t.prod, t.inv
    k = len(c)
    out = []
    prev_inv = t.one
    for i in range(k):
        x = prod[prev_inv][c[i]]
        if x < 0:
            return None
        if i < k - 1:
            x = prod[x][a[i]]
            if x < 0:
                return None
            prev_inv = inv[a[i]]
        out.append(x)
    return out


def equivalent_reduced(t, c, d):
    """Stallings' criterion on two reduced words of equal length."""
    if len(c) != len(d):
        return False
    prod, inv = t.prod, t.inv
    pi = t.one
    for r in range(len(c)):
        x = prod[pi][c[r]]
        if x < 0:
            return False
        pi = prod[inv[d[r]]][x]
        if pi < 0:
            return False
    return pi == t.one


def lexmin_interleaving(t, c):
    """Least word (by carrier index) among all interleavings of c."""
    prod, inv, n = t.prod, t.inv, t.n
    k = len(c)
    if k <= 1:
        return list(c)

    def dfs(i, prev_inv):
        x = prod[prev_inv][c[i]]
        if x < 0:
            return None
        if i == k - 1:
            return [x]
        row = prod[x]
        cands = sorted((row[a], a) for a in range(n) if row[a] >= 0)
        for d, a in cands:
            rest = dfs(i + 1, inv[a])
            if rest is not None:
                rest.insert(0, d)
                return rest
        return None

    return dfs(0, t.one)


def all_interleavings(t, c):
    """Every word c * a, in increasing order."""
    prod, inv, n = t.prod, t.inv, t.n
    k = len(c)
    if k <= 1:
        return [list(c)]
    found = []

    def dfs(i, prev_inv, acc):
        x = prod[prev_inv][c[i]]
        if x < 0:
            return
        if i == k - 1:
            found.append(acc + [x])
            return
        row = prod[x]
        for a in range(n):
            if row[a] >= 0:
                dfs(i + 1, inv[a], acc + [row[a]])

    dfs(0, t.one, [])
    found.sort()
    return found


def axiom_witnesses(n, mrel, drel, inv, one):
    """First counterexample (lexicographic) to each of the eight pregroup axioms.

    ``mrel`` is a flat 0/1 sequence of length n**3 indexed ``(x*n + y)*n + z``,
    ``drel`` a flat sequence of length n**2. Returns a list of 8 entries,
    each None or a tuple of indices.
    """
    M = [[[bool(mrel[(x * n + y) * n + z]) for z in range(n)] for y in range(n)] for x in range(n)]
    D = [[bool(drel[x * n + y]) for y in range(n)] for x in range(n)]
    row = [[[z for z in range(n) if M[x][y][z]] for y in range(n)] for x in range(n)]
    out = [None] * 8

    # (i) M(x,y,z) -> D(x,y)
    for x in range(n):
        for y in range(n):
            if not D[x][y] and row[x][y]:
                out[0] = (x, y, row[x][y][0])
                break
        if out[0]:
            break
    # (ii) D(x,y) -> exists z M(x,y,z)
    for x in range(n):
        for y in range(n):
            if D[x][y] and not row[x][y]:
                out[1] = (x, y)
                break
        if out[1]:
            break
    # (iii) functionality
    for w in range(n):
        for x in range(n):
            zs = row[w][x]
            if len(zs) > 1:
                out[2] = (w, x, zs[0], zs[1])
                break
        if out[2]:
            break
    # (iv) identity
    for x in range(n):
        if not (M[x][one][x] and M[one][x][x]):
            out[3] = (x,)
            break
    # (v) inverses
    for x in range(n):
        if not (M[x][inv[x]][one] and M[inv[x]][x][one]):
            out[4] = (x,)
            break
    # (vi) M(x,y,z) -> M(y^-1, x^-1, z^-1)
    done = False
    for x in range(n):
        for y in range(n):
            for z in row[x][y]:
                if not M[inv[y]][inv[x]][inv[z]]:
                    out[5] = (x, y, z)
                    done = True
                    break
            if done:
                break
        if done:
            break
    # (vii) M(a,b,r) & M(b,c,s) -> (M(a,s,x) <-> M(r,c,x))
    done = False
    for a in range(n):
        for b in range(n):
            rs = row[a][b]
            if not rs:
                continue
            for c in range(n):
                ss = row[b][c]
                if not ss:
                    continue
                for r in rs:
                    for s in ss:
                        left, right = M[a][s], M[r][c]
                        for x in range(n):
                            if left[x] != right[x]:
                                out[6] = (a, b, c, r, s, x)
                                done = True
                                break
                        if done:
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break
        if done:
            break
    # (viii) M(a,b,x) & M(b,c,y) & M(c,d,z) -> exists r,s (M(a,y,r) | M(y,d,s))
    done = False
    for a in range(n):
        for b in range(n):
            xs = row[a][b]
            if not xs:
                continue
            for c in range(n):
                ys = row[b][c]
                if not ys:
                    continue
                for d in range(n):
                    zs = row[c][d]
                    if not zs:
                        continue
                    for x in xs:
                        for y in ys:
                            if row[a][y] or row[y][d]:
                                continue
                            out[7] = (a, b, c, d, x, y, zs[0])
                            done = True
                            break
                        if done:
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break
        if done:
            break
    return out
