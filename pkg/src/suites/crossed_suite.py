"""
Suite des modules croisés
"""

from typing import List

from ..algebra.finite_groups import FiniteGroup
from ..crossed.crossed_module import (
    alternating_in_symmetric, check_axioms, from_central_extension, identity_module, non_central_extension,
    quotient_module, sabotaged_module, spin3_extension, trivial_extension, z2_z4_z2,
)
from .base_suite import BaseSuite, Check, raised


class CrossedModuleSuite(BaseSuite):
    scenario = 'crossed-modules'
    title = 'Modules croisés'

    def positive_modules(self):
        s3 = FiniteGroup.symmetric(3)
        return [
            ('id:S3', lambda: identity_module(s3)),
            ('A3<S3', lambda: alternating_in_symmetric(3)),
            ('Z6->Z3', lambda: quotient_module(6, 3)),
            ('Z2->Z4->Z2', lambda: from_central_extension(z2_z4_z2())),
            ('Z3xS3', lambda: from_central_extension(trivial_extension(FiniteGroup.cyclic(3), s3))),
        ]

    def collect_checks(self) -> List[Check]:
        checks = [
            Check(f'axiomes {name}', lambda build=build: check_axioms(build()).passed,
                  expected=True, provenance='derived', tolerance=0)
            for name, build in self.positive_modules()
        ]
        checks += [
            Check('axiomes Z2->SU(2)->SO(3)', self._spin, expected=True, provenance='derived', tolerance=0),
            Check('sabotage détecté', lambda: check_axioms(sabotaged_module(FiniteGroup.symmetric(3))).passed,
                  expected=False, provenance='trivial', tolerance=0),
            Check('sabotage : témoin', self._witness, expected=None, tolerance=None),
            Check('extension non centrale rejetée', lambda: raised(lambda: from_central_extension(non_central_extension())),
                  expected='ExtensionError', provenance='trivial', tolerance=0),
        ]
        return checks

    def _spin(self):
        rng = self.rng('spin3')
        cm = from_central_extension(spin3_extension(), rng, self.cfg.matrix_samples)
        return check_axioms(cm, rng, self.cfg.matrix_samples).passed

    def _witness(self):
        report = check_axioms(sabotaged_module(FiniteGroup.symmetric(3)))
        witness = report.first_witness()
        return None if witness is None else f"{witness[0]} @ {witness[1]}"
