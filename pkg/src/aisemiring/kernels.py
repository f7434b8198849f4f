"""Hot loops: exhaustive evaluation over assignments and table search.

Every kernel exists twice, as a numba-compiled loop (``*_numba``) and as a
vectorized numpy routine (``*_numpy``). The public names are bound to the
numba version when numba is importable and ``AISEMIRING_DISABLE_NUMBA`` is
unset; both twins must agree exactly, and the tests check that they do.

Encoding conventions shared by all kernels:

* tables are ``int64`` arrays of shape ``(n, n)`` with 0-based entries;
* a list of words is ``(flat, offsets)`` where word ``i`` is
  ``flat[offsets[i]:offsets[i + 1]]`` and letters are variable indices;
* assignment ``a`` in ``range(n ** k)`` gives variable ``j`` the value
  ``(a // n ** (k - 1 - j)) % n``, i.e. odometer order with variable 0 the
  most significant digit.
"""

from __future__ import annotations

import numpy as np

from ._jit import USE_NUMBA, njit

# Chunk of assignments evaluated at once by the numpy twins.
_CHUNK = 1 << 16


def encode_words(words):
    """Pack a sequence of index tuples into ``(flat, offsets)``."""
    offsets = np.zeros(len(words) + 1, dtype=np.int64)
    for i, w in enumerate(words):
        offsets[i + 1] = offsets[i] + len(w)
    flat = np.fromiter((x for w in words for x in w), dtype=np.int64, count=int(offsets[-1]))
    return flat, offsets


def assignment_digits(n, k, start=0, stop=None):
    """Variable values for assignments ``start..stop-1``, shape ``(k, m)``."""
    total = n**k
    if stop is None:
        stop = total
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((k, idx.size), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        out[j] = idx % n
        idx //= n
    return out


# ---------------------------------------------------------------------------
# word values over all assignments


def _word_table_py(mul, flat, offsets, n, k):
    nwords = offsets.shape[0] - 1
    total = n**k
    out = np.empty((nwords, total), dtype=np.int64)
    digits = np.zeros(k, dtype=np.int64)
    for a in range(total):
        for i in range(nwords):
            s = offsets[i]
            v = digits[flat[s]]
            for p in range(s + 1, offsets[i + 1]):
                v = mul[v, digits[flat[p]]]
            out[i, a] = v
        # advance the odometer
        j = k - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < n:
                break
            digits[j] = 0
            j -= 1
    return out


word_table_numba = njit(_word_table_py)


def word_table_numpy(mul, flat, offsets, n, k):
    nwords = offsets.shape[0] - 1
    total = n**k
    out = np.empty((nwords, total), dtype=np.int64)
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        digits = assignment_digits(n, k, start, stop)
        for i in range(nwords):
            letters = flat[offsets[i] : offsets[i + 1]]
            v = digits[letters[0]]
            for x in letters[1:]:
                v = mul[v, digits[x]]
            out[i, start:stop] = v
    return out


# ---------------------------------------------------------------------------
# first failing assignment of an identity


def _first_counterexample_py(add, mul, lflat, loff, rflat, roff, n, k):
    total = n**k
    digits = np.zeros(k, dtype=np.int64)
    for a in range(total):
        lv = -1
        for i in range(loff.shape[0] - 1):
            s = loff[i]
            v = digits[lflat[s]]
            for p in range(s + 1, loff[i + 1]):
                v = mul[v, digits[lflat[p]]]
            lv = v if lv < 0 else add[lv, v]
        rv = -1
        for i in range(roff.shape[0] - 1):
            s = roff[i]
            v = digits[rflat[s]]
            for p in range(s + 1, roff[i + 1]):
                v = mul[v, digits[rflat[p]]]
            rv = v if rv < 0 else add[rv, v]
        if lv != rv:
            return a
        j = k - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < n:
                break
            digits[j] = 0
            j -= 1
    return -1


first_counterexample_numba = njit(_first_counterexample_py)


def _side_values(add, mul, flat, offsets, digits):
    value = None
    for i in range(offsets.shape[0] - 1):
        letters = flat[offsets[i] : offsets[i + 1]]
        v = digits[letters[0]]
        for x in letters[1:]:
            v = mul[v, digits[x]]
        value = v if value is None else add[value, v]
    return value


def first_counterexample_numpy(add, mul, lflat, loff, rflat, roff, n, k):
    total = n**k
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        digits = assignment_digits(n, k, start, stop)
        lv = _side_values(add, mul, lflat, loff, digits)
        rv = _side_values(add, mul, rflat, roff, digits)
        bad = np.flatnonzero(lv != rv)
        if bad.size:
            return start + int(bad[0])
    return -1


# ---------------------------------------------------------------------------
# u ~ u + q for every (term, word) pair


def _leq_masks(add, word_vals):
    """``masks[a, v, b]``: bit ``q`` of 64-bit block ``b`` is set iff
    ``word_vals[q, a] <= v`` in the additive order."""
    n = add.shape[0]
    nq, na = word_vals.shape
    nblocks = (nq + 63) // 64
    leq = add[np.arange(n)[:, None], np.arange(n)[None, :]] == np.arange(n)[:, None]
    # below[v, q, a] = word_vals[q, a] <= v
    below = leq[:, word_vals]
    masks = np.zeros((na, n, nblocks), dtype=np.uint64)
    for q in range(nq):
        bit = np.uint64(1) << np.uint64(q % 64)
        masks[:, :, q // 64] |= np.where(below[:, q, :].T, bit, np.uint64(0))
    return masks


def _inclusion_bits_py(term_vals, masks):
    nt, na = term_vals.shape
    nblocks = masks.shape[2]
    out = np.empty((nt, nblocks), dtype=np.uint64)
    for t in range(nt):
        for b in range(nblocks):
            acc = masks[0, term_vals[t, 0], b]
            for a in range(1, na):
                acc &= masks[a, term_vals[t, a], b]
                if acc == 0:
                    break
            out[t, b] = acc
    return out


_inclusion_bits_numba = njit(_inclusion_bits_py)


def _unpack(bits, nq):
    as_bytes = bits.astype("<u8").view(np.uint8).reshape(bits.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :nq].astype(bool)


def inclusion_matrix_numba(add, term_vals, word_vals):
    masks = _leq_masks(add, word_vals)
    return _unpack(_inclusion_bits_numba(term_vals, masks), word_vals.shape[0])


def inclusion_matrix_numpy(add, term_vals, word_vals):
    masks = _leq_masks(add, word_vals)
    na = term_vals.shape[1]
    rows = np.arange(na)[None, :]
    out = []
    for start in range(0, term_vals.shape[0], 8192):
        tv = term_vals[start : start + 8192]
        picked = masks[rows, tv]  # (chunk, na, nblocks)
        out.append(np.bitwise_and.reduce(picked, axis=1))
    bits = np.concatenate(out) if out else np.zeros((0, masks.shape[2]), dtype=np.uint64)
    return _unpack(bits, word_vals.shape[0])


# ---------------------------------------------------------------------------
# multiplication tables over a fixed semilattice


def _rows_consistent(table, r, add):
    """Check every law instance whose entries lie in rows ``0..r``."""
    n = add.shape[0]
    for a in range(r + 1):
        for b in range(r + 1):
            s = add[a, b]
            if s <= r:
                for c in range(n):
                    if table[s, c] != add[table[a, c], table[b, c]]:
                        return False
    for a in range(r + 1):
        for b in range(n):
            ab = table[a, b]
            if ab > r or b > r:
                continue
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return False
    return True


_rows_consistent_numba = njit(_rows_consistent)


def _search_py(add, endos, capacity):
    n = add.shape[0]
    ne = endos.shape[0]
    table = np.zeros((n, n), dtype=np.int64)
    choice = np.full(n, -1, dtype=np.int64)
    found = np.zeros((capacity, n, n), dtype=np.int64)
    count = 0
    r = 0
    while r >= 0:
        choice[r] += 1
        if choice[r] >= ne:
            choice[r] = -1
            r -= 1
            continue
        table[r] = endos[choice[r]]
        if not _rows_consistent_numba(table, r, add):
            continue
        if r == n - 1:
            if count >= capacity:
                return found, -1
            found[count] = table
            count += 1
        else:
            r += 1
    return found, count


_search_numba = njit(_search_py)


def ai_tables_numba(add, endos):
    capacity = 1024
    while True:
        found, count = _search_numba(add, endos, capacity)
        if count >= 0:
            return found[:count].copy()
        capacity *= 4


def ai_tables_numpy(add, endos):
    """Breadth-first row extension; each layer is filtered in one shot."""
    n = add.shape[0]
    ne = endos.shape[0]
    partial = np.zeros((1, 0, n), dtype=np.int64)
    for r in range(n):
        m = partial.shape[0]
        grown = np.empty((m * ne, r + 1, n), dtype=np.int64)
        grown[:, :r] = np.repeat(partial, ne, axis=0)
        grown[:, r] = np.tile(endos, (m, 1))
        ok = np.ones(grown.shape[0], dtype=bool)
        # right distributivity: row(a+b) = row(a) + row(b)
        for a in range(r + 1):
            for b in range(r + 1):
                s = add[a, b]
                if s <= r and r in (a, b, s):
                    ok &= (grown[:, s] == add[grown[:, a], grown[:, b]]).all(axis=1)
        # associativity on instances whose rows are already present
        idx = np.arange(grown.shape[0])
        for a in range(r + 1):
            for b in range(r + 1):
                ab = grown[:, a, b]
                avail = ok & (ab <= r)
                if not avail.any():
                    continue
                left = grown[idx, np.minimum(ab, r)]  # (m, n): (ab)c
                right = grown[idx[:, None], a, grown[:, b]]  # a(bc)
                ok &= ~avail | (left == right).all(axis=1)
        partial = grown[ok]
    return partial.reshape(-1, n, n)


# ---------------------------------------------------------------------------
# dispatch

if USE_NUMBA:
    word_table = word_table_numba
    first_counterexample = first_counterexample_numba
    inclusion_matrix = inclusion_matrix_numba
    ai_tables = ai_tables_numba
else:
    word_table = word_table_numpy
    first_counterexample = first_counterexample_numpy
    inclusion_matrix = inclusion_matrix_numpy
    ai_tables = ai_tables_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
