from dataclasses import dataclass

from ..errors import InputValidationError
from .pauli import PauliString, PhasedPauli, mul, omega, parse_pauli, power


@dataclass(frozen=True)
class SingleSiteClifford:
    """A one-qudit Clifford U given by U X U† and U Z U†."""

    image_x: PhasedPauli
    image_z: PhasedPauli

    def __post_init__(self):
        q = self.image_x.q
        if self.image_x.n != 1 or self.image_z.n != 1 or self.image_z.q != q:
            raise InputValidationError("Clifford images must be single-site Paulis of equal dimension")
        if omega(self.image_x.pauli, self.image_z.pauli) != q - 1:
            raise InputValidationError("Clifford images do not preserve the X/Z commutation phase")
        identity = PhasedPauli.identity(q, 1)
        for image in (self.image_x, self.image_z):
            if power(image, q) != identity:
                raise InputValidationError(f"Clifford image {image} does not have order {q}")

    @property
    def q(self) -> int:
        return self.image_x.q

    @classmethod
    def from_text(cls, image_x: str, image_z: str, q: int = 2) -> "SingleSiteClifford":
        return cls(parse_pauli(image_x, q), parse_pauli(image_z, q))

    @classmethod
    def identity(cls, q: int = 2) -> "SingleSiteClifford":
        return cls(
            PhasedPauli(PauliString(q, (1,), (0,))), PhasedPauli(PauliString(q, (0,), (1,)))
        )

    def conjugate(self, p: PhasedPauli) -> PhasedPauli:
        """U P U† for a single-site phased Pauli P = r^s X^a Z^b."""
        if p.n != 1:
            raise InputValidationError("Single-site Clifford applied to a multi-site Pauli")
        result = mul(power(self.image_x, p.x[0]), power(self.image_z, p.z[0]))
        return PhasedPauli(result.pauli, result.phase + p.phase)

    def inverse(self) -> "SingleSiteClifford":
        """U† as a Clifford, found by inverting the action on the single-site basis."""
        q = self.q
        preimage = {}
        for a in range(q):
            for b in range(q):
                source = PhasedPauli(PauliString(q, (a,), (b,)))
                preimage[self.conjugate(source).pauli] = (source, self.conjugate(source).phase)
        images = []
        for target in (PauliString(q, (1,), (0,)), PauliString(q, (0,), (1,))):
            source, phase = preimage[target]
            images.append(PhasedPauli(source.pauli, source.phase - phase))
        return SingleSiteClifford(*images)


def hadamard(q: int = 2) -> SingleSiteClifford:
    """Fourier gate: X ↦ Z, Z ↦ X^{-1}."""
    return SingleSiteClifford(
        PhasedPauli(PauliString(q, (0,), (1,))), PhasedPauli(PauliString(q, (q - 1,), (0,)))
    )


def phase_gate(q: int = 2) -> SingleSiteClifford:
    """X ↦ Y (= iXZ) for q=2, X ↦ XZ with the Weyl phase for odd q; Z fixed."""
    if q == 2:
        image_x = PhasedPauli(PauliString(2, (1,), (1,)), 2)
    else:
        image_x = PhasedPauli(PauliString(q, (1,), (1,)), -2 * (q + 1))
    return SingleSiteClifford(image_x, PhasedPauli(PauliString(q, (0,), (1,))))
