import logging
from math import factorial, gcd
from typing import Callable, Iterable, Optional

from errors import InvalidParameter, UnknownBuiltin
from finite_field import (Matrix2, apply, as_matrix, check_invertible, check_prime, general_linear, identity_matrix,
                          inverse, is_irreducible, matrix_order, multiply, normalize_line, projective_points, vectors)
from finite_group import FiniteGroup
from permutation import Permutation


def _cycle(degree: int, points: Iterable[int]) -> Permutation:
    """A permutation of 0..degree-1 cycling the given 0-based points."""
    images = list(range(degree))
    points = list(points)
    for position, point in enumerate(points):
        images[point] = points[(position + 1) % len(points)]
    return Permutation(tuple(images))


def _check_positive(name: str, value: int, minimum: int = 1):
    if not isinstance(value, int) or value < minimum:
        raise InvalidParameter(f"{name} must be an integer >= {minimum}, got {value!r}")


def sym(degree: int) -> FiniteGroup:
    _check_positive("degree", degree)
    if degree == 1:
        return FiniteGroup(1, [Permutation.identity(1)], "S1")
    generators = [_cycle(degree, [0, 1])]
    if degree > 2:
        generators.append(_cycle(degree, range(degree)))
    return FiniteGroup(degree, generators, f"S{degree}")


def alt(degree: int) -> FiniteGroup:
    _check_positive("degree", degree)
    if degree < 3:
        return FiniteGroup(degree, [Permutation.identity(degree)], f"A{degree}")
    return FiniteGroup(degree, [_cycle(degree, [0, 1, point]) for point in range(2, degree)], f"A{degree}")


def cyclic(order: int) -> FiniteGroup:
    _check_positive("order", order)
    return FiniteGroup(order, [_cycle(order, range(order))], f"Z{order}")


def dihedral(order: int) -> FiniteGroup:
    """The dihedral group of the given order, acting on the vertices of a polygon."""
    if not isinstance(order, int) or order < 6 or order % 2:
        raise InvalidParameter(f"Dihedral order must be even and at least 6, got {order!r}")
    corners = order // 2
    rotation = _cycle(corners, range(corners))
    reflection = Permutation(tuple(-point % corners for point in range(corners)))
    return FiniteGroup(corners, [rotation, reflection], f"D{order}")


def elem_abelian(prime: int, rank: int) -> FiniteGroup:
    """E_(p^k) as k disjoint p-cycles on p k points."""
    check_prime(prime)
    _check_positive("rank", rank)
    degree = prime * rank
    generators = [_cycle(degree, range(block * prime, (block + 1) * prime)) for block in range(rank)]
    return FiniteGroup(degree, generators, f"E{prime}^{rank}")


def direct_product(*groups: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """Acts on the disjoint union of the factors' points, in factor order."""
    if not groups:
        raise InvalidParameter("A direct product needs at least one factor")
    degree = sum(group.degree for group in groups)
    generators = []
    offset = 0
    for group in groups:
        for generator in group.generators:
            images = list(range(degree))
            for point, image in enumerate(generator.images):
                images[offset + point] = offset + image
            generators.append(Permutation(tuple(images)))
        offset += group.degree
    return FiniteGroup(degree, generators, name or " x ".join(group.label for group in groups))


def _vector_index(vector: tuple[int, ...], prime: int) -> int:
    index = 0
    for coordinate in vector:
        index = index * prime + coordinate
    return index


def _matrix_label(matrix: Matrix2) -> str:
    return str([list(row) for row in matrix]).replace(" ", "")


def affine(prime: int, dimension: int, matrices: Iterable[Iterable[Iterable[int]]],
           name: Optional[str] = None) -> FiniteGroup:
    """
    E_(p^k) extended by the linear group <matrices>, acting on the p^k vectors of F_p^k.
    Generators: the k unit translations first, then v -> v M for each matrix.
    """
    check_prime(prime)
    _check_positive("dimension", dimension)
    linear = [as_matrix(matrix, prime) for matrix in matrices]
    for matrix in linear:
        if len(matrix) != dimension:
            raise InvalidParameter(f"Matrix {_matrix_label(matrix)} is not {dimension}x{dimension}")
        check_invertible(matrix, prime)
    points = vectors(prime, dimension)
    generators = []
    for axis in range(dimension):
        generators.append(Permutation(tuple(
            _vector_index(tuple((coordinate + (position == axis)) % prime for position, coordinate in enumerate(point)),
                          prime)
            for point in points)))
    for matrix in linear:
        generators.append(Permutation(tuple(_vector_index(apply(point, matrix, prime), prime) for point in points)))
    label = name or f"affine({prime},{dimension},{';'.join(_matrix_label(matrix) for matrix in linear)})"
    return FiniteGroup(len(points), generators, label)


def linear_group(prime: int, matrices: list[Matrix2], name: Optional[str] = None) -> FiniteGroup:
    """<matrices> acting on the nonzero vectors of F_p^k."""
    check_prime(prime)
    dimension = len(matrices[0])
    points = vectors(prime, dimension)[1:]
    index = {point: position for position, point in enumerate(points)}
    generators = []
    for matrix in matrices:
        check_invertible(matrix, prime)
        generators.append(Permutation(tuple(index[apply(point, matrix, prime)] for point in points)))
    return FiniteGroup(len(points), generators, name)


_SL2_GENERATORS = (((1, 1), (0, 1)), ((1, 0), (1, 1)))


def sl2(prime: int) -> FiniteGroup:
    """SL(2, p) on the p^2 - 1 nonzero vectors."""
    check_prime(prime)
    return linear_group(prime, list(_SL2_GENERATORS), f"SL(2,{prime})")


def psl2(prime: int) -> FiniteGroup:
    """PSL(2, p) on the p + 1 points of the projective line."""
    check_prime(prime)
    points = projective_points(prime)
    index = {point: position for position, point in enumerate(points)}
    generators = [Permutation(tuple(index[normalize_line(apply(point, matrix, prime), prime)] for point in points))
                  for matrix in _SL2_GENERATORS]
    return FiniteGroup(len(points), generators, f"PSL(2,{prime})")


def expected_order(builtin: str, *parameters: int) -> int:
    """Orders predicted by theory for the parametrized constructors."""
    if builtin == "sym":
        return factorial(parameters[0])
    if builtin == "alt":
        return max(factorial(parameters[0]) // 2, 1)
    if builtin == "sl2":
        prime = parameters[0]
        return prime * (prime - 1) * (prime + 1)
    if builtin == "psl2":
        prime = parameters[0]
        return prime * (prime - 1) * (prime + 1) // gcd(2, prime - 1)
    raise UnknownBuiltin(f"No order formula for {builtin!r}")


def find_irreducible_s3(prime: int) -> tuple[Matrix2, Matrix2]:
    """
    The first pair (a, b) in GL(2, p), a of order 3 and b of order 2 with b a b = a^-1, with no
    common invariant line; both are scanned in lexicographic order of their entries.
    """
    check_prime(prime)
    elements = general_linear(prime)
    identity = identity_matrix(2)
    third_roots = [matrix for matrix in elements if matrix != identity and multiply(multiply(matrix, matrix, prime),
                                                                                    matrix, prime) == identity]
    involutions = [matrix for matrix in elements if matrix != identity and multiply(matrix, matrix, prime) == identity]
    for a in third_roots:
        a_inverse = inverse(a, prime)
        for b in involutions:
            if multiply(multiply(b, a, prime), b, prime) == a_inverse and is_irreducible([a, b], prime):
                logging.debug(f"Irreducible S3 in GL(2,{prime}): a={_matrix_label(a)}, b={_matrix_label(b)}")
                return a, b
    raise InvalidParameter(f"GL(2,{prime}) has no irreducible S3")


def e25_z3() -> FiniteGroup:
    # Companion matrix of x^2 + x + 1, irreducible over F_5
    return affine(5, 2, [((0, 4), (1, 4))], "[E25]Z3")


def e49_s3() -> FiniteGroup:
    return affine(7, 2, list(find_irreducible_s3(7)), "[E49]S3")


def q8() -> FiniteGroup:
    """The quaternion group as the Sylow 2-subgroup of SL(2, 3), regular on the 8 nonzero vectors."""
    matrices = [((0, 1), (2, 0)), ((1, 1), (1, 2))]
    if any(matrix_order(matrix, 3) != 4 for matrix in matrices):
        raise InvalidParameter("Quaternion generators must have order 4")
    return linear_group(3, matrices, "Q8")


NAMED_GROUPS: dict[str, Callable[[], FiniteGroup]] = {
    "s3": lambda: sym(3),
    "s4": lambda: sym(4),
    "a4": lambda: alt(4),
    "a5": lambda: alt(5),
    "q8": q8,
    "d8": lambda: dihedral(8),
    "e25_z3": e25_z3,
    "e49_s3": e49_s3,
    "sl2_13": lambda: sl2(13),
    "psl2_13": lambda: psl2(13),
}


def named_group(name: str) -> FiniteGroup:
    constructor = NAMED_GROUPS.get(name.lower())
    if constructor is None:
        raise UnknownBuiltin(f"Unknown builtin group {name!r}; known: {', '.join(sorted(NAMED_GROUPS))}")
    return constructor()
