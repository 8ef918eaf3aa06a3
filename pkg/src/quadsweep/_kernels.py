"""Compiled hot paths: hyperplane sweep, brute-force enumeration, scoring.

Everything here is numba-njit'ed and operates on plain float64/int64 arrays.
The public modules wrap these kernels with validated, typed interfaces.
Objective identity is passed as an integer code; NaN encodes an invalid
(zero-variance) score throughout.
"""

import math

import numpy as np
from numba import njit

# Objective codes shared with stats.OBJECTIVES. LTS is kernel-only (oracle).
CODE_VAR = 0
CODE_TV = 1
CODE_DV = 2
CODE_COV = 3
CODE_R = 4
CODE_R2 = 5
CODE_LTS = 6

ZERO_VAR_TOL = 1e-12
RANK_TOL = 1e-10


@njit(cache=True, nogil=True)
def score_sums(code, k, sx, sy, sxx, syy, sxy):
    """Objective value from power sums over a k-point subset; NaN if invalid."""
    dx = sxx - sx * sx / k
    dy = syy - sy * sy / k
    cxy = sxy - sx * sy / k
    if code == CODE_VAR:
        return dx
    if code == CODE_TV:
        return dx + dy
    if code == CODE_DV:
        return dx - dy
    if code == CODE_COV:
        return cxy
    if code == CODE_R:
        if dx <= ZERO_VAR_TOL or dy <= ZERO_VAR_TOL:
            return np.nan
        return cxy / math.sqrt(dx * dy)
    if code == CODE_R2:
        if dx <= ZERO_VAR_TOL or dy <= ZERO_VAR_TOL:
            return np.nan
        return cxy * cxy / (dx * dy)
    # CODE_LTS: residual sum of squares of the least-squares line
    if dx <= ZERO_VAR_TOL:
        return np.nan
    return dy - cxy * cxy / dx


@njit(cache=True, nogil=True)
def nullspace_vector(a, v):
    """One-dimensional nullspace of an in-place-destroyed (r, r+1) matrix.

    Row reduction with partial pivoting; rank tolerance RANK_TOL relative to
    the largest absolute entry. Fills v (length r+1) with the null vector and
    returns True, or returns False when the nullity exceeds one.
    """
    rows, cols = a.shape
    amax = 0.0
    for i in range(rows):
        for j in range(cols):
            t = abs(a[i, j])
            if t > amax:
                amax = t
    tol = RANK_TOL * (amax if amax > 1.0 else 1.0)

    piv_col = np.empty(rows, np.int64)
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = r
        m = abs(a[r, c])
        for rr in range(r + 1, rows):
            t = abs(a[rr, c])
            if t > m:
                m = t
                p = rr
        if m <= tol:
            continue  # free column
        if p != r:
            for j in range(cols):
                a[r, j], a[p, j] = a[p, j], a[r, j]
        inv = 1.0 / a[r, c]
        for j in range(cols):
            a[r, j] *= inv
        for rr in range(rows):
            if rr != r:
                f = a[rr, c]
                if f != 0.0:
                    for j in range(cols):
                        a[rr, j] -= f * a[r, j]
        piv_col[r] = c
        r += 1

    if r < rows:
        return False  # nullity >= 2: affinely dependent tuple

    # locate the single free column
    free = -1
    pi = 0
    for c in range(cols):
        if pi < rows and piv_col[pi] == c:
            pi += 1
        else:
            free = c
            break
    for j in range(cols):
        v[j] = 0.0
    v[free] = 1.0
    for i in range(rows):
        v[piv_col[i]] = -a[i, free]

    # canonical scale: unit normal, first nonzero normal coordinate positive
    d = cols - 1
    nrm = 0.0
    for j in range(d):
        nrm += v[j] * v[j]
    nrm = math.sqrt(nrm)
    if nrm < 1e-12:
        return False  # normal vanishes: no admissible hyperplane
    sign = 1.0
    for j in range(d):
        if abs(v[j]) > 1e-12:
            if v[j] < 0.0:
                sign = -1.0
            break
    f = sign / nrm
    for j in range(cols):
        v[j] *= f
    return True


@njit(cache=True, nogil=True)
def _lex_less(a, b, m):
    for i in range(m):
        if a[i] < b[i]:
            return True
        if a[i] > b[i]:
            return False
    return False


@njit(cache=True, nogil=True)
def _insertion_argsort(keys, order, m):
    """order <- positions 0..m-1 sorted ascending by (keys, position)."""
    for i in range(m):
        order[i] = i
    for i in range(1, m):
        oi = order[i]
        ki = keys[oi]
        j = i - 1
        while j >= 0 and (keys[order[j]] > ki
                          or (keys[order[j]] == ki and order[j] > oi)):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = oi


@njit(cache=True, nogil=True)
def _sort_small(a, m):
    for i in range(1, m):
        x = a[i]
        j = i - 1
        while j >= 0 and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


@njit(cache=True, nogil=True)
def sweep_kernel(L, xs, ys, k, code, maximize, min_count):
    """Enumerate all d-tuples of lifted points and score hyperplane prefixes.

    Returns (best_set, best_value, tuples_examined, candidates_scored,
    nondegenerate_tuples, found). best_value is the raw (unoriented) score.
    Ties are broken by the lexicographically smallest sorted index set.
    """
    n, d = L.shape
    m = n - d
    nsub = 1 << d

    comb = np.empty(d, np.int64)
    for i in range(d):
        comb[i] = i
    in_p = np.zeros(n, np.bool_)
    M = np.empty((d, d + 1))
    v = np.empty(d + 1)
    cidx = np.empty(m, np.int64)
    proj = np.empty(m)
    keys = np.empty(m)
    order = np.empty(m, np.int64)
    pre_sx = np.empty(m + 1)
    pre_sy = np.empty(m + 1)
    pre_sxx = np.empty(m + 1)
    pre_syy = np.empty(m + 1)
    pre_sxy = np.empty(m + 1)
    msk_sx = np.empty(nsub)
    msk_sy = np.empty(nsub)
    msk_sxx = np.empty(nsub)
    msk_syy = np.empty(nsub)
    msk_sxy = np.empty(nsub)
    popcnt = np.empty(nsub, np.int64)
    cand = np.empty(k, np.int64)
    best_set = np.empty(k, np.int64)

    best_val = 0.0
    best_oriented = -np.inf
    found = False
    tuples = 0
    cands = 0
    nondeg = 0

    while True:
        tuples += 1
        for i in range(d):
            pi = comb[i]
            for j in range(d):
                M[i, j] = L[pi, j]
            M[i, d] = 1.0
        if nullspace_vector(M, v):
            nondeg += 1
            # complement indices and projections onto the normal
            for i in range(d):
                in_p[comb[i]] = True
            t = 0
            for i in range(n):
                if not in_p[i]:
                    cidx[t] = i
                    s = 0.0
                    for j in range(d):
                        s += L[i, j] * v[j]
                    proj[t] = s
                    t += 1
            for i in range(d):
                in_p[comb[i]] = False

            # subset sums over the tuple points, indexed by bit mask
            msk_sx[0] = 0.0
            msk_sy[0] = 0.0
            msk_sxx[0] = 0.0
            msk_syy[0] = 0.0
            msk_sxy[0] = 0.0
            popcnt[0] = 0
            for mask in range(1, nsub):
                low = mask & (-mask)
                rest = mask ^ low
                bit = 0
                while (low >> bit) & 1 == 0:
                    bit += 1
                x = xs[comb[bit]]
                y = ys[comb[bit]]
                msk_sx[mask] = msk_sx[rest] + x
                msk_sy[mask] = msk_sy[rest] + y
                msk_sxx[mask] = msk_sxx[rest] + x * x
                msk_syy[mask] = msk_syy[rest] + y * y
                msk_sxy[mask] = msk_sxy[rest] + x * y
                popcnt[mask] = popcnt[rest] + 1

            # the kernel vector's sign is arbitrary: try both sort orders
            for ori in range(2):
                if ori == 0:
                    for i in range(m):
                        keys[i] = proj[i]
                else:
                    for i in range(m):
                        keys[i] = -proj[i]
                _insertion_argsort(keys, order, m)

                pre_sx[0] = 0.0
                pre_sy[0] = 0.0
                pre_sxx[0] = 0.0
                pre_syy[0] = 0.0
                pre_sxy[0] = 0.0
                for i in range(m):
                    x = xs[cidx[order[i]]]
                    y = ys[cidx[order[i]]]
                    pre_sx[i + 1] = pre_sx[i] + x
                    pre_sy[i + 1] = pre_sy[i] + y
                    pre_sxx[i + 1] = pre_sxx[i] + x * x
                    pre_syy[i + 1] = pre_syy[i] + y * y
                    pre_sxy[i + 1] = pre_sxy[i] + x * y

                for mask in range(nsub):
                    need = k - popcnt[mask]
                    if need < 0 or need > m:
                        continue
                    sx = msk_sx[mask] + pre_sx[need]
                    sy = msk_sy[mask] + pre_sy[need]
                    sxx = msk_sxx[mask] + pre_sxx[need]
                    syy = msk_syy[mask] + pre_syy[need]
                    sxy = msk_sxy[mask] + pre_sxy[need]
                    cands += 1
                    if k < min_count:
                        continue
                    val = score_sums(code, k, sx, sy, sxx, syy, sxy)
                    if np.isnan(val):
                        continue
                    ov = val if maximize else -val
                    if found and ov < best_oriented:
                        continue
                    t2 = 0
                    for i in range(d):
                        if (mask >> i) & 1:
                            cand[t2] = comb[i]
                            t2 += 1
                    for i in range(need):
                        cand[t2] = cidx[order[i]]
                        t2 += 1
                    _sort_small(cand, k)
                    if (not found) or ov > best_oriented or _lex_less(cand, best_set, k):
                        best_oriented = ov
                        best_val = val
                        found = True
                        for i in range(k):
                            best_set[i] = cand[i]

        # next d-combination, lexicographic
        i = d - 1
        while i >= 0 and comb[i] == n - d + i:
            i -= 1
        if i < 0:
            break
        comb[i] += 1
        for j in range(i + 1, d):
            comb[j] = comb[j - 1] + 1

    return best_set, best_val, tuples, cands, nondeg, found


@njit(cache=True, nogil=True)
def _rd_advance(c, t):
    """One revolving-door step (Knuth 7.2.1.3 Algorithm R) on 1-based c.

    Returns (removed, added, done). c stays sorted ascending in c[1..t].
    """
    if t % 2 == 1:
        if c[1] + 1 < c[2]:
            removed = c[1]
            c[1] += 1
            return removed, c[1], False
        j = 4  # encode: next step tries to decrease
        jj = 2
    else:
        if c[1] > 0:
            removed = c[1]
            c[1] -= 1
            return removed, c[1], False
        j = 5
        jj = 2
    while True:
        if jj > t:
            return -1, -1, True
        if j == 4:
            if c[jj] >= jj:
                removed = c[jj]
                c[jj] = c[jj - 1]
                c[jj - 1] = jj - 2
                return removed, jj - 2, False
            jj += 1
            j = 5
        else:
            if c[jj] + 1 < c[jj + 1]:
                removed = c[jj - 1]
                c[jj - 1] = c[jj]
                c[jj] += 1
                return removed, c[jj], False
            jj += 1
            j = 4


@njit(cache=True, nogil=True)
def enumerate_combinations(n, t):
    """All t-combinations of range(n) in revolving-door order (test support)."""
    total = 1
    for i in range(t):
        total = total * (n - i) // (i + 1)
    out = np.empty((total, t), np.int64)
    c = np.empty(t + 2, np.int64)
    for j in range(1, t + 1):
        c[j] = j - 1
    c[t + 1] = n
    for row in range(total):
        for j in range(t):
            out[row, j] = c[j + 1]
        if row + 1 < total:
            _rd_advance(c, t)
    return out


@njit(cache=True, nogil=True)
def brute_force_kernel(xs, ys, k, code, maximize, min_count):
    """Exhaustive k-subset search with O(1) revolving-door stat updates.

    Returns (best_set, best_value, visited, found). Lexicographic
    tie-breaking on the sorted index set.
    """
    n = xs.shape[0]
    c = np.empty(k + 2, np.int64)
    for j in range(1, k + 1):
        c[j] = j - 1
    c[k + 1] = n

    sx = 0.0
    sy = 0.0
    sxx = 0.0
    syy = 0.0
    sxy = 0.0
    for j in range(1, k + 1):
        x = xs[c[j]]
        y = ys[c[j]]
        sx += x
        sy += y
        sxx += x * x
        syy += y * y
        sxy += x * y

    best_set = np.empty(k, np.int64)
    best_oriented = -np.inf
    best_val = 0.0
    found = False
    visited = 0

    while True:
        visited += 1
        if k >= min_count:
            val = score_sums(code, k, sx, sy, sxx, syy, sxy)
            if not np.isnan(val):
                ov = val if maximize else -val
                take = False
                if not found or ov > best_oriented:
                    take = True
                elif ov == best_oriented:
                    take = _lex_less(c[1:k + 1], best_set, k)
                if take:
                    best_oriented = ov
                    best_val = val
                    found = True
                    for j in range(k):
                        best_set[j] = c[j + 1]
        removed, added, done = _rd_advance(c, k)
        if done:
            break
        xr = xs[removed]
        yr = ys[removed]
        xa = xs[added]
        ya = ys[added]
        sx += xa - xr
        sy += ya - yr
        sxx += xa * xa - xr * xr
        syy += ya * ya - yr * yr
        sxy += xa * ya - xr * yr

    return best_set, best_val, visited, found


@njit(cache=True, nogil=True)
def hull_distance_kernel(va, vb, max_iter, tol):
    """Away-step Frank-Wolfe for min ||pa - pb||^2 over conv(va) x conv(vb).

    Returns (pa, pb, dist_sq, gap, iterations, converged). The iterate lives
    on the product of barycentric simplices; exact line search each step.
    """
    na = va.shape[0]
    nb = vb.shape[0]
    d = va.shape[1]
    la = np.zeros(na)
    lb = np.zeros(nb)
    la[0] = 1.0
    lb[0] = 1.0
    pa = va[0].copy()
    pb = vb[0].copy()
    gap = np.inf
    converged = False
    it = 0
    u = np.empty(d)
    dvec = np.empty(d)
    for it in range(1, max_iter + 1):
        for c in range(d):
            u[c] = pa[c] - pb[c]

        # Frank-Wolfe vertex: minimize u.va[i], maximize u.vb[j]
        i_fw = 0
        best_a = np.inf
        for i in range(na):
            s = 0.0
            for c in range(d):
                s += va[i, c] * u[c]
            if s < best_a:
                best_a = s
                i_fw = i
        j_fw = 0
        best_b = -np.inf
        for j in range(nb):
            s = 0.0
            for c in range(d):
                s += vb[j, c] * u[c]
            if s > best_b:
                best_b = s
                j_fw = j

        uu = 0.0
        for c in range(d):
            uu += u[c] * u[c]
        gap_fw = uu - (best_a - best_b)
        gap = 2.0 * gap_fw
        if gap < tol:
            converged = True
            break

        # away vertex among active atoms: maximize u.va[i], minimize u.vb[j]
        i_aw = -1
        worst_a = -np.inf
        for i in range(na):
            if la[i] > 0.0:
                s = 0.0
                for c in range(d):
                    s += va[i, c] * u[c]
                if s > worst_a:
                    worst_a = s
                    i_aw = i
        j_aw = -1
        worst_b = np.inf
        for j in range(nb):
            if lb[j] > 0.0:
                s = 0.0
                for c in range(d):
                    s += vb[j, c] * u[c]
                if s < worst_b:
                    worst_b = s
                    j_aw = j

        gap_aw = (worst_a - worst_b) - uu
        if gap_fw >= gap_aw:
            for c in range(d):
                dvec[c] = (va[i_fw, c] - vb[j_fw, c]) - u[c]
            gamma_max = 1.0
            toward = True
        else:
            for c in range(d):
                dvec[c] = u[c] - (va[i_aw, c] - vb[j_aw, c])
            wa = la[i_aw]
            wb = lb[j_aw]
            cap_a = wa / (1.0 - wa) if wa < 1.0 else np.inf
            cap_b = wb / (1.0 - wb) if wb < 1.0 else np.inf
            gamma_max = min(cap_a, cap_b)
            toward = False

        dd = 0.0
        ud = 0.0
        for c in range(d):
            dd += dvec[c] * dvec[c]
            ud += u[c] * dvec[c]
        if dd <= 0.0 or not np.isfinite(gamma_max):
            if gap < tol:
                converged = True
            break
        gamma = -ud / dd
        if gamma > gamma_max:
            gamma = gamma_max
        if gamma <= 0.0:
            break

        if toward:
            for i in range(na):
                la[i] *= 1.0 - gamma
            for j in range(nb):
                lb[j] *= 1.0 - gamma
            la[i_fw] += gamma
            lb[j_fw] += gamma
        else:
            suma = 0.0
            for i in range(na):
                la[i] *= 1.0 + gamma
            la[i_aw] -= gamma
            for i in range(na):
                if la[i] < 0.0:
                    la[i] = 0.0
                suma += la[i]
            sumb = 0.0
            for j in range(nb):
                lb[j] *= 1.0 + gamma
            lb[j_aw] -= gamma
            for j in range(nb):
                if lb[j] < 0.0:
                    lb[j] = 0.0
                sumb += lb[j]
            for i in range(na):
                la[i] /= suma
            for j in range(nb):
                lb[j] /= sumb

        for c in range(d):
            sa = 0.0
            for i in range(na):
                sa += la[i] * va[i, c]
            pa[c] = sa
            sb = 0.0
            for j in range(nb):
                sb += lb[j] * vb[j, c]
            pb[c] = sb

    dist_sq = 0.0
    for c in range(d):
        diff = pa[c] - pb[c]
        dist_sq += diff * diff
    if not np.isfinite(gap):
        gap = 0.0
    return pa, pb, dist_sq, gap, it, converged
