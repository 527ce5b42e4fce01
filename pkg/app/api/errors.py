"""Translate model errors into HTTP errors"""
import logging
from contextlib import contextmanager

from fastapi import HTTPException

from app.exceptions import InvalidInputError, NumericalFailureError

logger = logging.getLogger(__name__)


@contextmanager
def http_errors():
    try:
        yield
    except InvalidInputError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    except NumericalFailureError as e:
        logger.error(f"Numerical failure: {e}")
        raise HTTPException(status_code=500, detail=str(e)) from e
