"""
Utilitaires numériques partagés : sommation compensée, générateurs aléatoires
"""

import math
import zlib
from typing import Iterable

import numpy as np


def fsum_complex(values: Iterable[complex]) -> complex:
    """
    Somme compensée (math.fsum) des parties réelle et imaginaire.

    L'ordre de sommation est celui de l'itérable : les appelants passent les
    noeuds dans l'ordre croissant, ce qui rend le résultat stable au bit près.
    """
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values).ravel()
    if arr.size == 0:
        return 0j
    return complex(math.fsum(arr.real.tolist()), math.fsum(np.imag(arr).tolist()))


def make_rng(seed: int, stream: str = '') -> np.random.Generator:
    """
    Générateur PCG64 dérivé de (seed, crc32(stream)).

    Chaque check a son propre flux, indépendant de l'ordre d'exécution.
    """
    key = zlib.crc32(stream.encode('utf-8'))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, key])))


def nearest_integer_distance(value: complex) -> tuple:
    """(entier le plus proche, distance) pour une valeur presque entière"""
    nearest = int(round(complex(value).real))
    return nearest, abs(complex(value) - nearest)
