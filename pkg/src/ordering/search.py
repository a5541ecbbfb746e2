"""Witness search for the cube ordering set A.

Words u . c^inf are enumerated by prefix length. For each word the cube
ordering is piecewise constant in r, changing only where r crosses a
cylinder side length, so a grid of scales inside each interval between
consecutive side lengths sees every ordering the word has. Candidates found in
floating point are re-proved at the exact left endpoint of their interval.
With workers > 1 words are examined in a process pool, chunk by chunk.
"""

import functools
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from ..config import SearchConfig
from ..core.sponge import Ordering, SpongeSystem, WordSpec, word_products
from .certificates import CertificateKind, OrderingCertificate
from .rules import cube_ordering

logger = logging.getLogger(__name__)

CHUNK_SIZE = 256


@dataclass
class SearchResult:
    found: dict = field(default_factory=dict)  # Ordering -> OrderingCertificate
    words_examined: int = 0
    budget_exhausted: bool = False


def candidate_words(N: int, max_prefix_len: int) -> Iterator[WordSpec]:
    """u . c^inf by increasing |u|, skipping prefixes that already end in c."""
    for length in range(max_prefix_len + 1):
        for prefix in itertools.product(range(N), repeat=length):
            for c in range(N):
                if prefix and prefix[-1] == c:
                    continue
                yield WordSpec(prefix, (c,))


def _probe_orderings(S: SpongeSystem, w: WordSpec, depth: int, grid: int) -> list:
    """
    Float pass over one word: `grid` scales inside every constant-ordering
    interval, reduced to (ordering, ell, coord) for the first interval showing
    each distinct ordering; lambda-product (ell, coord) is its left end.
    """
    T = len(w.prefix) + depth
    letters = np.array(w.take(T))
    cum = np.cumsum(S.log_ratios[letters], axis=0)  # (T, d), decreasing down each column
    floor = cum[-1].max()  # below this some stopping time exceeds T

    flat = cum.ravel()
    order = np.argsort(flat, kind="stable")
    usable = order[flat[order] >= floor]
    if usable.size == 0:
        return []

    ends = flat[usable]
    uppers = np.append(ends[1:], 0.0)
    keep = uppers > ends
    lefts, rights, idxs = ends[keep], uppers[keep], usable[keep]

    steps = np.arange(1, grid + 1) / (grid + 1)
    log_r = (lefts[:, None] + (rights - lefts)[:, None] * steps[None, :]).ravel()
    owners = np.repeat(idxs, grid)

    L = np.stack([np.searchsorted(-cum[:, c], -log_r, side="left") + 1 for c in range(S.d)], axis=1)
    prods = cum[L - 1, np.arange(S.d)[None, :]]
    coords = np.arange(1, S.d + 1)
    perms = coords[np.lexsort((np.broadcast_to(coords, L.shape), -prods, -L), axis=-1)]
    # first probe of each distinct ordering, in scan order
    _, first = np.unique(perms, axis=0, return_index=True)
    first.sort()

    probes = []
    for k in first:
        ell, c = divmod(int(owners[k]), S.d)
        probes.append((tuple(int(x) for x in perms[k]), ell + 1, c + 1))
    return probes


def _examine_word(S: SpongeSystem, w: WordSpec, config: SearchConfig) -> list:
    """Exactly verified (Ordering, OrderingCertificate) pairs for one word."""
    hits = []
    for perm, ell, coord in _probe_orderings(S, w, config.cycle_depth, config.scale_grid_size):
        r = word_products(S, w, coord, ell)[ell]
        sigma = cube_ordering(S, w, r)
        if sigma.perm != perm:
            logger.debug(f"Float probe on {w} said {perm}, exact check at r={r} gives {sigma}")
        hits.append((sigma, OrderingCertificate(sigma, CertificateKind.CUBE, word=w, scale=r)))
    return hits


def search_cube_orderings(S: SpongeSystem, targets: Iterable[Ordering],
                          config: Optional[SearchConfig] = None) -> SearchResult:
    """
    Look for cube witnesses until every target ordering has one or the word
    budget runs out. The first witness in enumeration order wins, independent
    of the worker count.
    """
    config = config or SearchConfig()
    targets = set(targets)
    result = SearchResult()
    words = itertools.islice(candidate_words(S.N, config.max_prefix_len), config.max_words)

    examine = functools.partial(_examine_word, S, config=config)
    executor = ProcessPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        while True:
            chunk = list(itertools.islice(words, CHUNK_SIZE))
            if not chunk:
                break
            outcomes = executor.map(examine, chunk) if executor else map(examine, chunk)
            for w, hits in zip(chunk, outcomes):
                result.words_examined += 1
                for sigma, certificate in hits:
                    if sigma not in result.found:
                        logger.debug(f"Cube witness for {sigma}: {w} at r={certificate.scale}")
                        result.found[sigma] = certificate
                if targets <= set(result.found):
                    logger.info(f"Witness search complete after {result.words_examined} words")
                    return result
    finally:
        if executor:
            executor.shutdown(wait=True)

    result.budget_exhausted = not targets <= set(result.found)
    if result.budget_exhausted:
        missing = sorted(targets - set(result.found))
        logger.warning(
            f"Witness search budget exhausted after {result.words_examined} words; "
            f"{len(missing)} ordering(s) without a witness"
        )
    return result
