"""Outcome of reading a CLI input: the parsed diagram or biquandle, or the message saying why it was rejected."""

from __future__ import annotations

from typing import Generic, TypeVar

E = TypeVar("E")
T = TypeVar("T")
U = TypeVar("U")


class Result(Generic[E, T]):
    __slots__ = ("value",)

    def __init__(self, value: E | T) -> None:
        self.value = value

    def is_failure(self) -> bool:
        return isinstance(self, Failure)

    def is_successful(self) -> bool:
        return isinstance(self, Success)

    def unwrap(self) -> T:
        if self.is_failure():
            msg = f"Input was rejected: {self.value}"
            raise ValueError(msg)
        return self.value  # type: ignore[return-value]

    def failure(self) -> E:
        if self.is_successful():
            msg = "Input was accepted, there is no failure message"
            raise ValueError(msg)
        return self.value  # type: ignore[return-value]


class Failure(Result[E, T]):
    def __repr__(self) -> str:
        return f"Failure({self.value!r})"


class Success(Result[E, T]):
    def __repr__(self) -> str:
        return f"Success({self.value!r})"


def is_successful(result: Result[E, T]) -> bool:
    return result.is_successful()


def both(first: Result[E, T], second: Result[E, U]) -> Result[E, tuple[T, U]]:
    """Both values, or the first failure in argument order."""
    if first.is_failure():
        return Failure(first.failure())
    if second.is_failure():
        return Failure(second.failure())
    return Success((first.unwrap(), second.unwrap()))
