"""
Soundness sweep of the constructive sparse domination over a mixed corpus.
"""
import logging
from typing import Any, Dict, Optional

from apps.sparse.services.domination import SRParams, check_domination, sparse_dominate
from apps.sparse.services.families import verify_sparse
from apps.stability.services.corpus import mixed_corpus

logger = logging.getLogger(__name__)

RATIO_TOL = 1e-12


def domination_sweep(
    size: int = 200,
    seed: Optional[int] = None,
    params: Optional[SRParams] = None,
    eta: Optional[float] = None,
    max_depth: int = 6
) -> Dict[str, Any]:
    """
    Dominate every corpus member, verify the family and check the pointwise
    bound; a member passes when both hold.
    """
    params = (params or SRParams(1.0, 2.0)).require_monotone()
    corpus = mixed_corpus(size, seed, max_depth)
    passed = 0
    worst_ratio = 0.0
    worst_sparseness = 1.0
    failures = []

    for position, f in enumerate(corpus):
        family = sparse_dominate(f, params, eta)
        report = verify_sparse(family)
        check = check_domination(f, family, params)
        worst_ratio = max(worst_ratio, check.max_ratio)
        worst_sparseness = min(worst_sparseness, report.worst_ratio)
        if report.ok and check.max_ratio <= 1.0 + RATIO_TOL:
            passed += 1
        else:
            failures.append({'member': position, 'n': f.n, 'J': f.J, 'max_ratio': check.max_ratio})

    if failures:
        logger.warning(f"Domination sweep: {len(failures)} of {size} members failed")
    logger.info(f"Domination sweep over {size} members: passed {passed}, worst ratio {worst_ratio:.6g}")
    return {
        'members': len(corpus),
        'passed': passed,
        'worst_ratio': worst_ratio,
        'worst_sparseness': worst_sparseness,
        'params': {'p': params.p, 'q': params.q, 'alpha': params.alpha},
        'failures': failures,
    }
