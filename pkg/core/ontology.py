import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from core.errors import HierarchyError, UnknownCategoryError, raise_collected
from utils.tsv import iter_records

logger = logging.getLogger("ontology")

COMMON = "common"
PROPER = "proper"
KINDS = (COMMON, PROPER)

# Depth ceilings of the full-scale common and proper noun trees
MAX_DEPTH = {COMMON: 12, PROPER: 9}


@dataclass(frozen=True)
class SemanticCategory:
    id: str
    name: str
    parent: Optional[str]
    kind: str


@dataclass(frozen=True)
class CategoryConstraint:
    """Disjunctive category condition: satisfied by any member."""

    members: Tuple[str, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("category constraint needs at least one member")

    def __iter__(self):
        return iter(self.members)

    def __str__(self) -> str:
        return ",".join(self.members)


@dataclass(frozen=True)
class CategoryMatch:
    member: str
    category: str
    depth: int


class CategoryHierarchy:
    """Two rooted IS-A trees (common and proper nouns), immutable once built."""

    def __init__(self, categories: Iterable[SemanticCategory], source: str = "<categories>"):
        self.source = source
        self._categories: Dict[str, SemanticCategory] = {}
        self._order: List[str] = []
        for category in categories:
            if category.id in self._categories:
                raise HierarchyError("duplicate category id", source, ident=category.id)
            self._categories[category.id] = category
            self._order.append(category.id)

        self._depth: Dict[str, int] = {}
        self._ancestors: Dict[str, FrozenSet[str]] = {}
        self._roots: Dict[str, str] = {}
        self._validate()

    def _validate(self) -> None:
        errors = []

        for cid in self._order:
            category = self._categories[cid]
            if category.kind not in KINDS:
                errors.append(HierarchyError(f"unknown kind {category.kind!r}", self.source, ident=cid))
                continue
            if category.parent is None:
                if category.kind in self._roots:
                    errors.append(HierarchyError(
                        f"second root of kind {category.kind} (first is {self._roots[category.kind]})",
                        self.source, ident=cid))
                else:
                    self._roots[category.kind] = cid
                continue
            parent = self._categories.get(category.parent)
            if parent is None:
                errors.append(HierarchyError(f"missing parent {category.parent}", self.source, ident=cid))
                continue
            if parent.kind != category.kind:
                errors.append(HierarchyError(
                    f"parent {parent.id} is {parent.kind}, child is {category.kind}", self.source, ident=cid))

        # Walk every parent chain once; chains that revisit a node are cycles
        broken = set()
        for cid in self._order:
            if cid in self._depth or cid in broken:
                continue
            chain = []
            seen = set()
            current = cid
            while current is not None and current not in self._depth:
                if current in broken:
                    break
                if current in seen:
                    errors.append(HierarchyError("cycle in parent links", self.source, ident=current))
                    break
                seen.add(current)
                chain.append(current)
                current = self._categories[current].parent
                if current is not None and current not in self._categories:
                    break
            else:
                base = 0 if current is None else self._depth[current]
                for offset, node in enumerate(reversed(chain), start=1):
                    self._depth[node] = base + offset
                continue
            broken.update(chain)

        for kind in KINDS:
            if kind not in self._roots:
                errors.append(HierarchyError(f"no root of kind {kind}", self.source))

        for cid in self._order:
            depth = self._depth.get(cid)
            kind = self._categories[cid].kind
            if depth is not None and kind in MAX_DEPTH and depth > MAX_DEPTH[kind]:
                errors.append(HierarchyError(
                    f"depth {depth} exceeds the {kind} ceiling of {MAX_DEPTH[kind]}", self.source, ident=cid))

        raise_collected(errors)

        for cid in self._order:
            chain = []
            current = cid
            while current is not None:
                chain.append(current)
                current = self._categories[current].parent
            self._ancestors[cid] = frozenset(chain)

        logger.debug("Loaded %d categories (%s)", len(self._order),
                     ", ".join(f"{kind} depth {self.max_depth(kind)}" for kind in KINDS))

    def __contains__(self, category_id: str) -> bool:
        return category_id in self._categories

    def __len__(self) -> int:
        return len(self._order)

    def __iter__(self):
        return (self._categories[cid] for cid in self._order)

    def get(self, category_id: str) -> SemanticCategory:
        self.check(category_id)
        return self._categories[category_id]

    def check(self, category_id: str) -> None:
        if category_id not in self._categories:
            raise UnknownCategoryError(category_id)

    @property
    def roots(self) -> Dict[str, str]:
        return dict(self._roots)

    def root_of_kind(self, kind: str) -> str:
        return self._roots[kind]

    def parent(self, category_id: str) -> Optional[str]:
        return self.get(category_id).parent

    def kind(self, category_id: str) -> str:
        return self.get(category_id).kind

    def depth(self, category_id: str) -> int:
        self.check(category_id)
        return self._depth[category_id]

    def max_depth(self, kind: str) -> int:
        return max((self._depth[cid] for cid in self._order if self._categories[cid].kind == kind), default=0)

    def subsumes(self, ancestor: str, descendant: str) -> bool:
        self.check(ancestor)
        self.check(descendant)
        return ancestor in self._ancestors[descendant]

    def best_match(self, word_categories: Sequence[str],
                   constraint: CategoryConstraint) -> Optional[CategoryMatch]:
        """Deepest constraint member subsuming one of the word's categories.

        Ties go to the member declared first; for a given member the first
        subsumed word category wins.
        """
        word_categories = tuple(word_categories)
        for category in word_categories:
            self.check(category)
        best = None
        for member in constraint.members:
            member_depth = self.depth(member)
            if best is not None and member_depth <= best.depth:
                continue
            for category in word_categories:
                if member in self._ancestors[category]:
                    best = CategoryMatch(member, category, member_depth)
                    break
        return best


def load_hierarchy(source: str, source_name: str = "categories.tsv") -> CategoryHierarchy:
    """Parse `id <TAB> kind <TAB> parent-or-"-" <TAB> name` records."""
    categories = []
    seen = {}
    errors = []
    for record in iter_records(source):
        if len(record.fields) != 4:
            errors.append(HierarchyError(f"expected 4 fields, got {len(record.fields)}", source_name, record.line))
            continue
        cid, kind, parent, name = record.fields
        if not cid:
            errors.append(HierarchyError("empty category id", source_name, record.line))
            continue
        if cid in seen:
            errors.append(HierarchyError(f"duplicate id (first on line {seen[cid]})", source_name, record.line, cid))
            continue
        if parent == cid:
            errors.append(HierarchyError("cycle: category is its own parent", source_name, record.line, cid))
            continue
        seen[cid] = record.line
        categories.append(SemanticCategory(cid, name, None if parent == "-" else parent, kind))

    raise_collected(errors)
    return CategoryHierarchy(categories, source=source_name)


def subsumes(h: CategoryHierarchy, ancestor: str, descendant: str) -> bool:
    return h.subsumes(ancestor, descendant)


def depth(h: CategoryHierarchy, category_id: str) -> int:
    return h.depth(category_id)


def best_match(h: CategoryHierarchy, word_categories: Sequence[str],
               constraint: CategoryConstraint) -> Optional[CategoryMatch]:
    return h.best_match(word_categories, constraint)
