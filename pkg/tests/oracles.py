"""Independent reference implementations used to cross-check the library.

Everything here is deliberately naive: codeword enumeration instead of
rank arguments, direct summation instead of closed forms.  Keep it that way;
these are the measuring sticks, not the product.
"""

from itertools import product

import numpy as np


def all_codewords(code):
    """Every codeword as an (q^K, n*alpha) array. Keep q^K small."""
    q = code.field.q
    kk = code.K
    count = q ** kk
    assert count <= 1 << 20, f"enumeration of {count} codewords is too large"
    msgs = np.array(list(product(range(q), repeat=kk)), dtype=np.int64)
    g = code.generator.data
    field = code.field
    acc = np.zeros((count, g.shape[1]), dtype=np.int64)
    for u in range(kk):
        contrib = field.mul_vec(msgs[:, u : u + 1], g[u : u + 1, :])
        acc = field.add_vec(acc, contrib)
    return acc


def min_distance_by_enumeration(code):
    """Minimum thick-symbol weight over all nonzero codewords."""
    words = all_codewords(code)
    sym = words.reshape(words.shape[0], code.n, code.alpha)
    weights = (sym != 0).any(axis=2).sum(axis=1)
    nonzero = weights[weights > 0]
    return int(nonzero.min())


def leading_sum_by_summation(profile, s):
    """P(s) by literally extending the profile periodically and adding."""
    total = 0
    n_l = len(profile)
    for i in range(s):
        total += profile[i % n_l]
    return total


def trailing_sum_by_summation(profile, s):
    return sum(profile[len(profile) - s :]) if s else 0


def p_inverse_by_scan(profile, v):
    s = 0
    total = 0
    n_l = len(profile)
    while total < v:
        total += profile[s % n_l]
        s += 1
    return s
