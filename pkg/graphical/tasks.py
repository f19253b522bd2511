import logging

from celery import shared_task

from graphical.gaussian import screen_inline
from graphical.models import ScreeningRecord

logger = logging.getLogger(__name__)


@shared_task
def screen_graph_task(inline, label="", saturate_minors=False, seed=0, max_retries=None):
    """Screen one graph and persist the row; returns the record id"""
    try:
        row = screen_inline(inline, label, saturate_minors, seed, max_retries=max_retries)
        record = ScreeningRecord.from_row(row)
        logger.info(f"[SCREEN-TASK] stored {record}")
        return record.id
    except Exception as e:
        logger.error(f"[SCREEN-TASK-ERROR] {label or inline}: {str(e)}", exc_info=True)
        raise
