"""
Erreurs du projet - une seule hiérarchie, levée par les modules numériques
"""


class VerificationError(Exception):
    """Erreur de base de la boîte à outils"""


class UsageError(VerificationError):
    """Paramètres de ligne de commande ou de configuration invalides (exit 2)"""


class InvalidDimensionError(VerificationError):
    """Dimension d'algèbre ou de base incompatible"""


class InconsistentBasisError(VerificationError):
    """La base de générateurs ne vérifie pas ses propres invariants"""


class DegreeError(VerificationError):
    """Degré de forme différentielle incompatible avec l'opération"""


class GridMismatchError(VerificationError):
    """Formes définies sur des grilles différentes"""


class InvariantViolationError(VerificationError):
    """Un invariant déclaré (unitarité, hermiticité, ...) n'est pas respecté"""


class ConventionError(VerificationError):
    """Convention nommée inconnue (côté de Maurer-Cartan, type de transformation, provenance)"""


class ValueShapeError(VerificationError):
    """Valeurs scalaires et matricielles mélangées de façon invalide"""


class SizeGuardError(VerificationError):
    """Énumération exhaustive trop grande"""


class UndeclaredIntersectionError(VerificationError):
    """Intersection de recouvrement non déclarée"""


class StructuralError(VerificationError):
    """Morphisme ou action qui n'est pas un homomorphisme"""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ExtensionError(StructuralError):
    """Extension de groupes non centrale"""


class SupportViolationError(VerificationError):
    """Fonction test non nulle hors de sa boule de support"""


class SpectrumHitError(VerificationError):
    """Valeur de référence trop proche du spectre"""


class GapResolutionError(VerificationError):
    """Raffinement adaptatif insuffisant pour suivre les valeurs propres"""

    def __init__(self, message: str, interval=None):
        super().__init__(message)
        self.interval = interval


class ReportWriteError(VerificationError):
    """Écriture du rapport impossible (exit 3)"""
