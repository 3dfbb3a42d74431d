from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Tuple, Union

from core.errors import EncodingError


@dataclass(frozen=True)
class Record:
    line: int
    fields: Tuple[str, ...]


def read_text(path: Union[str, Path]) -> str:
    with open(path, "rb") as f:
        data = f.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise EncodingError(str(path), e.start) from e


def iter_records(text: str) -> Iterator[Record]:
    """Yield tab-separated records, skipping blank lines and # comments."""
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = tuple(field.strip() for field in raw.rstrip("\r\n").split("\t"))
        yield Record(number, fields)


def split_list(value: str, separator: str = ",") -> List[str]:
    """Split a list field; "-" and "" mean empty."""
    if value in ("", "-"):
        return []
    return [item.strip() for item in value.split(separator) if item.strip()]
