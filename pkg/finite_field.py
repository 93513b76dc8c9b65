from itertools import product
from typing import Iterable, Optional

from sympy import Matrix, isprime

from errors import InvalidParameter, NotInvertible

Matrix2 = tuple[tuple[int, ...], ...]


def check_prime(prime: int):
    if not isinstance(prime, int) or not isprime(prime):
        raise InvalidParameter(f"{prime} is not a prime")


def as_matrix(rows: Iterable[Iterable[int]], prime: int) -> Matrix2:
    """
    Validates a square matrix over F_p given row-major, entries 0 <= e < p.
    """
    check_prime(prime)
    matrix = tuple(tuple(row) for row in rows)
    if not matrix or any(len(row) != len(matrix) for row in matrix):
        raise InvalidParameter(f"Matrix {matrix} is not square")
    for row in matrix:
        for entry in row:
            if not isinstance(entry, int) or not 0 <= entry < prime:
                raise InvalidParameter(f"Entry {entry} is outside 0..{prime - 1}")
    return matrix


def identity_matrix(size: int) -> Matrix2:
    return tuple(tuple(int(row == column) for column in range(size)) for row in range(size))


def multiply(left: Matrix2, right: Matrix2, prime: int) -> Matrix2:
    columns = list(zip(*right))
    return tuple(tuple(sum(a * b for a, b in zip(row, column)) % prime for column in columns) for row in left)


def apply(vector: tuple[int, ...], matrix: Matrix2, prime: int) -> tuple[int, ...]:
    """The row vector v M."""
    return tuple(sum(vector[row] * matrix[row][column] for row in range(len(vector))) % prime
                 for column in range(len(matrix)))


def determinant(matrix: Matrix2, prime: int) -> int:
    return int(Matrix(matrix).det()) % prime


def inverse(matrix: Matrix2, prime: int) -> Matrix2:
    try:
        inverted = Matrix(matrix).inv_mod(prime)
    except ValueError:
        raise NotInvertible(f"{[list(row) for row in matrix]} is singular modulo {prime}")
    return tuple(tuple(int(entry) % prime for entry in inverted.row(row)) for row in range(inverted.rows))


def check_invertible(matrix: Matrix2, prime: int):
    if determinant(matrix, prime) == 0:
        raise NotInvertible(f"{[list(row) for row in matrix]} is singular modulo {prime}")


def matrix_order(matrix: Matrix2, prime: int) -> int:
    check_invertible(matrix, prime)
    identity = identity_matrix(len(matrix))
    power = matrix
    order = 1
    while power != identity:
        power = multiply(power, matrix, prime)
        order += 1
    return order


def vectors(prime: int, dimension: int) -> list[tuple[int, ...]]:
    """F_p^k in lexicographic order; the zero vector comes first."""
    return list(product(range(prime), repeat=dimension))


def projective_points(prime: int) -> list[tuple[int, int]]:
    """Normalized representatives of the lines of F_p^2: (1, x) for each x, then (0, 1)."""
    return [(1, x) for x in range(prime)] + [(0, 1)]


def normalize_line(vector: tuple[int, int], prime: int) -> tuple[int, int]:
    first, second = vector
    if first:
        return 1, second * pow(first, -1, prime) % prime
    return 0, 1


def general_linear(prime: int, dimension: int = 2) -> list[Matrix2]:
    """All of GL(k, p), in lexicographic order of the row-major entries."""
    check_prime(prime)
    result = []
    for entries in product(range(prime), repeat=dimension * dimension):
        matrix = tuple(tuple(entries[row * dimension:(row + 1) * dimension]) for row in range(dimension))
        if determinant(matrix, prime):
            result.append(matrix)
    return result


def generated_matrices(generators: list[Matrix2], prime: int, limit: Optional[int] = None) -> Optional[list[Matrix2]]:
    """
    The closure of the generators under multiplication, breadth-first from the identity.
    :param limit: Give up (returning None) once more than this many elements are found.
    """
    identity = identity_matrix(len(generators[0]))
    elements = [identity]
    seen = {identity}
    for element in elements:
        for generator in generators:
            candidate = multiply(element, generator, prime)
            if candidate not in seen:
                seen.add(candidate)
                elements.append(candidate)
                if limit is not None and len(elements) > limit:
                    return None
    return elements


def has_invariant_line(generators: list[Matrix2], prime: int) -> bool:
    """Whether some line of F_p^2 is mapped to itself by every generator (acting on row vectors)."""
    for point in projective_points(prime):
        if all(normalize_line(apply(point, matrix, prime), prime) == point for matrix in generators):
            return True
    return False


def is_irreducible(generators: list[Matrix2], prime: int) -> bool:
    """Irreducibility on F_p^2: no invariant line."""
    if any(len(matrix) != 2 for matrix in generators):
        raise InvalidParameter("Irreducibility is only decided for 2x2 matrices")
    return not has_invariant_line(generators, prime)
