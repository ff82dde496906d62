
import numpy as np
import pytest

from asqkd.sdk.protocol import ProtocolConfig


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch, tmp_path):
    """Keep SQKD_* variables and a stray .env out of every test."""
    for name in ("SQKD_SEED", "SQKD_LOG_LEVEL", "SQKD_WORKERS", "SQKD_TRIALS", "SQKD_P_T"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def small_p1():
    return ProtocolConfig(protocol="P1", N=2000, gamma1=0.9, gamma2=0.9, xi=0.1, seed=11)


@pytest.fixture
def small_p2():
    return ProtocolConfig(protocol="P2", kappa=80, tau=20, lambda_=100, delta=0.1, exact_counts=True, seed=12)


@pytest.fixture
def small_p3():
    return ProtocolConfig(protocol="P3", kappa=80, tau=20, lambda_=100, delta=0.1, exact_counts=True, seed=13)
