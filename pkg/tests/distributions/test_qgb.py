# *******************************************************************************
# Copyright (c) 2026 Contributors to the Eclipse Foundation
#
# See the NOTICE file(s) distributed with this work for additional
# information regarding copyright ownership.
#
# This program and the accompanying materials are made available under the
# terms of the Apache License Version 2.0 which is available at
# https://www.apache.org/licenses/LICENSE-2.0
#
# SPDX-License-Identifier: Apache-2.0
# *******************************************************************************
import math

import numpy as np
import pytest
from test_properties import add_test_properties

from pathway_gb.distributions import gb_pdf, qgb_cdf, qgb_norm_constant, qgb_pdf
from pathway_gb.errors import InvalidParams, NonNormalizable
from pathway_gb.models import GammaBesselParams, PathwayParams, QGammaBesselParams
from pathway_gb.numerics import integrate_adaptive
from pathway_gb.pathway import pathway_pdf


def qgb(beta: float, b: float, delta: float, q: float) -> QGammaBesselParams:
    return QGammaBesselParams(base=GammaBesselParams(beta=beta, b=b, delta=delta), q=q)


def total_mass(p: QGammaBesselParams) -> float:
    upper = p.support_upper
    return integrate_adaptive(lambda t: float(qgb_pdf(p, t)), 0.0, upper, scale=4.0).value


@add_test_properties(verifies=["qgb_pdf"])
class TestBoundedSupport:
    """
    q < 1: type-1 beta kernel on [0, 1/(b(1-q))].
    """

    def test_q_zero_is_triangular(self):
        p = qgb(1.0, 1.0, 0.0, 0.0)
        assert qgb_norm_constant(p) == pytest.approx(2.0, rel=1e-13)
        np.testing.assert_allclose(qgb_pdf(p, np.array([0.25, 0.5, 0.75])), [1.5, 1.0, 0.5], rtol=1e-12)

    def test_zero_outside_support(self):
        p = qgb(1.0, 1.0, 0.0, 0.0)
        np.testing.assert_array_equal(qgb_pdf(p, np.array([-0.5, 1.0, 1.5])), [0.0, 0.0, 0.0])
        assert qgb_cdf(p, 2.0) == pytest.approx(1.0, abs=1e-12)

    def test_matches_pathway_density(self):
        p = qgb(2.0, 1.0, 0.0, 0.5)
        pathway = PathwayParams(gamma=2.0, theta=1.0, a=1.0, eta=1.0, q=0.5)
        t = np.linspace(0.1, 1.9, 10)
        np.testing.assert_allclose(qgb_pdf(p, t), pathway_pdf(pathway, t), rtol=1e-9)

    @pytest.mark.parametrize("delta", [0.0, 0.8, 3.0])
    def test_integrates_to_one(self, delta: float):
        assert total_mass(qgb(2.5, 1.5, delta, 0.3)) == pytest.approx(1.0, abs=1e-9)

    def test_negative_delta_valid_on_support(self):
        assert total_mass(qgb(2.0, 1.0, -0.5, 0.5)) == pytest.approx(1.0, abs=1e-9)

    def test_negative_delta_invalid_on_support(self):
        with pytest.raises(InvalidParams):
            qgb_pdf(qgb(2.0, 0.1, -5.0, 0.0), 0.5)

    def test_cdf(self):
        p = qgb(1.0, 1.0, 0.0, 0.0)
        np.testing.assert_allclose(qgb_cdf(p, np.array([0.5, 0.25])), [0.75, 0.4375], atol=1e-10)


@add_test_properties(verifies=["qgb_pdf"])
class TestUnboundedSupport:
    """
    q > 1: type-2 beta kernel with a power-law tail.
    """

    def test_closed_form_normalizer(self):
        p = qgb(2.0, 1.0, 0.0, 1.25)
        assert qgb_norm_constant(p) == pytest.approx(0.375, rel=1e-13)
        assert qgb_pdf(p, 1.0) == pytest.approx(0.375 * 1.25**-4, rel=1e-13)
        assert total_mass(p) == pytest.approx(1.0, abs=1e-8)

    def test_tail_not_integrable(self):
        with pytest.raises(NonNormalizable):
            qgb_pdf(qgb(2.0, 1.0, 0.0, 1.5), 1.0)

    def test_growing_bessel_factor_not_integrable(self):
        with pytest.raises(NonNormalizable):
            qgb_norm_constant(qgb(2.0, 1.0, 0.5, 1.5))

    def test_tilted_integrates_to_one_over_horizon(self):
        p = qgb(2.0, 1.0, 0.5, 1.01)
        mass = integrate_adaptive(lambda t: float(qgb_pdf(p, t)), 0.0, 400.0, points=[5.0, 20.0, 80.0]).value
        assert mass == pytest.approx(1.0, abs=1e-7)


@add_test_properties(verifies=["qgb_pdf"], test_type="interface-test")
class TestGammaBesselLimit:
    """
    Both q-analogues approach the gamma Bessel density as q -> 1.
    """

    base = GammaBesselParams(beta=2.0, b=1.0, delta=0.5)
    t = np.array([0.5, 1.0, 2.0])

    @pytest.mark.parametrize("q", [1.0 - 1e-4, 1.0 + 1e-4])
    def test_limit(self, q: float):
        np.testing.assert_allclose(
            qgb_pdf(QGammaBesselParams(self.base, q), self.t), gb_pdf(self.base, self.t), rtol=2e-3
        )

    def test_kernel_times_normalizer(self):
        p = QGammaBesselParams(self.base, 0.6)
        kernel = qgb_pdf(p, self.t, normalized=False)
        np.testing.assert_allclose(kernel * qgb_norm_constant(p), qgb_pdf(p, self.t), rtol=1e-14)

    def test_q_one_rejected(self):
        with pytest.raises(InvalidParams):
            QGammaBesselParams(self.base, 1.0)

    def test_support_upper(self):
        assert QGammaBesselParams(self.base, 0.5).support_upper == pytest.approx(2.0)
        assert QGammaBesselParams(self.base, 1.5).support_upper == math.inf
