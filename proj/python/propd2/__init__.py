"""Exact computation in nilpotent quotients of free pro-p groups.

Thin dict-level wrappers over the JSON-string API of the C++ extension.
All unbounded integers travel as decimal strings.
"""

import json

from _propd2 import WordError  # noqa: F401
import _propd2


def _loads(s):
    return json.loads(s)


def collect(word, p, q, cls, mod_exp=-1):
    """Mal'cev coordinates of a word dict {"n", "b", "word": [[gen, exp], ...]}."""
    return _loads(_propd2.collect_word(json.dumps(word), p, str(q), cls, mod_exp))


def standard_word(n, b, chi, p):
    """r_1(n, b, chi); chi is "trivial", "up:M", "minus_times:F" or "minus_power:F"."""
    return _loads(_propd2.standard_word(n, b, chi, p))


def check_demushkin(word, p):
    return _loads(_propd2.check_demushkin(json.dumps(word), p))


def normalize(pair, chi, p, depth=5, seed=None):
    seed_json = json.dumps(seed) if seed is not None else None
    return _loads(_propd2.normalize(json.dumps(pair), chi, p, depth, seed_json))


def verify(certificate, pair):
    return _propd2.verify(json.dumps(certificate), json.dumps(pair))


def cap(pair, index):
    return _loads(_propd2.cap(json.dumps(pair), index))


def graphs(genus, boundary, max_edges, pants=False):
    return _loads(_propd2.graphs(genus, boundary, max_edges, pants))


def downset(graph, genus, boundary):
    return _loads(_propd2.downset(json.dumps(graph), genus, boundary))


def collapse(graph, subset):
    return _loads(_propd2.collapse(json.dumps(graph), list(subset)))


def to_dot(graph):
    return _propd2.to_dot(json.dumps(graph))


def hall_basis(rank, weight):
    return _loads(_propd2.hall_basis(rank, weight))
