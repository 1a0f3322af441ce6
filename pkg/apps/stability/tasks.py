"""
Celery tasks for the stability harness.

Each task loads an ExperimentRun, runs the experiment it names and stores the
report on the row:
- Decay-rate fits of the sparse indices
- Sparse-domination soundness sweeps
"""
from celery import shared_task
import logging

from config.exceptions import SparsekitError
from apps.grid.services.reports import report_envelope

logger = logging.getLogger(__name__)


def _load_run(run_id: str):
    from apps.stability.models import ExperimentRun

    run = ExperimentRun.objects.get(id=run_id)
    run.mark(ExperimentRun.Status.RUNNING)
    return run


@shared_task(bind=True, max_retries=3)
def run_table1_experiment(self, run_id: str):
    """Fit the sparse-index decay of one classical space and store the report."""
    from apps.stability.models import ExperimentRun
    from apps.stability.services.table1 import table1_experiment

    try:
        run = _load_run(run_id)
    except ExperimentRun.DoesNotExist:
        logger.error(f"Decay-rate run {run_id} not found")
        return

    params = run.parameters
    try:
        report = table1_experiment(
            space=params['space'],
            p=params['p'],
            alpha=params.get('alpha', 0.0),
            n=params.get('n', 2),
            J_range=(params.get('jmin', 5), params.get('jmax', 8)),
            seed=params.get('seed'),
        )
    except SparsekitError as e:
        logger.warning(f"Decay-rate run {run_id} refused: {e}")
        run.mark(ExperimentRun.Status.REFUSED, error_message=str(e))
        return
    except Exception as e:
        logger.error(f"Decay-rate run {run_id} failed: {e}")
        run.mark(ExperimentRun.Status.FAILED, error_message=str(e))
        raise self.retry(exc=e, countdown=60)

    run.mark(
        ExperimentRun.Status.COMPLETED,
        report=report_envelope('table1', report, seed=params.get('seed')),
    )
    logger.info(f"Decay-rate run {run_id} complete: worst deviation {report['worst_deviation']:.4f}")


@shared_task(bind=True, max_retries=3)
def run_domination_sweep(self, run_id: str):
    """Dominate a generated corpus and record how many members pass."""
    from apps.stability.models import ExperimentRun
    from apps.sparse.services.domination import SRParams
    from apps.stability.services.sweeps import domination_sweep

    try:
        run = _load_run(run_id)
    except ExperimentRun.DoesNotExist:
        logger.error(f"Domination sweep {run_id} not found")
        return

    params = run.parameters
    try:
        sr = SRParams(params.get('p', 1.0), params.get('q', 2.0), params.get('alpha', 0.0))
        report = domination_sweep(size=params.get('size', 200), seed=params.get('seed'), params=sr)
    except SparsekitError as e:
        logger.warning(f"Domination sweep {run_id} refused: {e}")
        run.mark(ExperimentRun.Status.REFUSED, error_message=str(e))
        return
    except Exception as e:
        logger.error(f"Domination sweep {run_id} failed: {e}")
        run.mark(ExperimentRun.Status.FAILED, error_message=str(e))
        raise self.retry(exc=e, countdown=60)

    run.mark(
        ExperimentRun.Status.COMPLETED,
        report=report_envelope('domination', report, seed=params.get('seed')),
    )
    logger.info(f"Domination sweep {run_id} complete: {report['passed']}/{report['members']} passed")
