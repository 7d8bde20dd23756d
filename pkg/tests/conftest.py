import logging
from pathlib import Path

import pytest

from changeflow.ingest.parser import parse_model
from changeflow.rules.addition import AdditionMatrix
from changeflow.rules.engine import generate_into

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def elevator_text() -> bytes:
    return (FIXTURES / "elevator.json").read_bytes()


@pytest.fixture
def elevator(elevator_text):
    return parse_model(elevator_text).model


@pytest.fixture
def matrix() -> AdditionMatrix:
    return AdditionMatrix.default()


@pytest.fixture
def elevator_bdrs(elevator, matrix):
    """Elevator model carrying its generated BDRs"""
    return generate_into(elevator, matrix)


@pytest.fixture
def collaboration():
    return parse_model((FIXTURES / "collaboration.json").read_bytes()).model


@pytest.fixture(autouse=True)
def reset_logging():
    """The CLI detaches the changeflow logger from the root; reattach it for caplog"""
    yield
    logger = logging.getLogger("changeflow")
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True
