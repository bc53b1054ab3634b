"""The faithful matrix action of E = N_G(P)/C_G(P) on Omega_1(P) over F_p.

Omega_1(P) is small enough to index exhaustively (discrete logs by lookup),
so the matrix of a conjugation is read off column by column.  Faithfulness is
certified by the order identity |image| = |N|/|C|, and the p'-property of the
automizer of an abelian Sylow subgroup is enforced.
"""

from __future__ import annotations

from automref.ffield import field
from automref.fmatrix import Mat, MatGroup
from automref.groups import AbelianPStructure
from automref.perm import PermGroup, Permutation


class AutomizerError(RuntimeError):
    pass


class AutomizerAction:
    """Matrix image of the automizer, with lifts back to N_G(P)."""

    def __init__(self, structure: AbelianPStructure, basis: list[Permutation],
                 E: MatGroup, lift: dict[Mat, Permutation], order_E: int):
        self.structure = structure
        self.basis = basis
        self.E = E
        self.lift = lift
        self.order_E = order_E

    @property
    def dimension(self) -> int:
        return self.E.dim


def omega1_basis(structure: AbelianPStructure) -> list[Permutation]:
    """Independent order-p generators of Omega_1(P), fixed by the structure."""
    return list(structure.omega1_basis)


def omega1_coordinates(structure: AbelianPStructure) -> dict[bytes, tuple[int, ...]]:
    """Exponent vector of every element of Omega_1 in the chosen basis."""
    p = structure.p
    basis = structure.omega1_basis
    ident = structure.group.identity
    coords = {ident.key(): tuple([0] * len(basis))}
    elements = [(ident, tuple([0] * len(basis)))]
    for i, b in enumerate(basis):
        new = []
        for x, vec in elements:
            y = x
            new.append((x, vec))
            for e in range(1, p):
                y = y * b
                vec2 = vec[:i] + (e,) + vec[i + 1:]
                new.append((y, vec2))
                coords[y.key()] = vec2
        elements = new
    if len(coords) != p ** len(basis):
        raise AutomizerError("Omega_1 indexing failed; basis not independent")
    return coords


def automizer_action(G: PermGroup, P: PermGroup, N: PermGroup, C: PermGroup,
                     structure: AbelianPStructure) -> AutomizerAction:
    """Matrix image of N acting on Omega_1(P) by conjugation, over F_p."""
    p = structure.p
    k = structure.rank
    fp = field(p)
    coords = omega1_coordinates(structure)
    basis = structure.omega1_basis

    order_E, rem = divmod(N.order(), C.order())
    if rem:
        raise AutomizerError("|C| does not divide |N|")
    if order_E % p == 0:
        raise AutomizerError(
            f"p = {p} divides |N/C| = {order_E}: P is not an abelian Sylow subgroup")

    gens = []
    lift: dict[Mat, Permutation] = {}
    for n in N.chain.strong_generators():
        ninv = n.inverse()
        cols = []
        for b in basis:
            img = ninv * b * n
            vec = coords.get(img.key())
            if vec is None:
                raise AutomizerError("conjugation left Omega_1(P)")
            cols.append(vec)
        mat = Mat(fp, [[cols[j][i] for j in range(k)] for i in range(k)])
        if mat.is_identity() or mat in lift:
            continue
        lift[mat] = n
        gens.append(mat)

    E = MatGroup(fp, k, gens, name="E")
    if E.order() != order_E:
        raise AutomizerError(
            f"matrix image has order {E.order()}, but |N|/|C| = {order_E}; "
            "the action is not faithful or P is not Sylow")
    return AutomizerAction(structure, basis, E, lift, order_E)
