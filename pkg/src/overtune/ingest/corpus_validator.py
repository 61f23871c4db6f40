"""Corpus-level validation of parsed runs."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from overtune.errors import ValidationError
from overtune.models import HpoRun, RunKey


@dataclass(frozen=True)
class DuplicateRun:
    """A RunKey identity claimed by more than one run."""

    key: RunKey
    locations: tuple[str, ...]


@dataclass(frozen=True)
class ValidationReport:
    """Summary of a parsed corpus."""

    n_runs: int
    duplicates: tuple[DuplicateRun, ...] = ()
    length_histogram: dict[int, int] = field(default_factory=dict)
    runs_per_study: dict[str, int] = field(default_factory=dict)

    @property
    def is_clean(self) -> bool:
        return not self.duplicates


class CorpusValidator:
    """Checks that apply to a whole corpus rather than a single row."""

    @staticmethod
    def _location(run: HpoRun) -> str:
        row = run.first_row
        return f"{run.source or '<memory>'} row {row if row is not None else '?'}"

    @staticmethod
    def find_duplicates(runs: Iterable[HpoRun]) -> list[DuplicateRun]:
        """
        Runs sharing an identity, in order of first appearance.

        Args:
            runs: Parsed runs

        Returns:
            One entry per duplicated identity with the location of every copy
        """
        by_identity: dict[tuple, list[HpoRun]] = {}
        for run in runs:
            by_identity.setdefault(run.key.identity, []).append(run)
        return [
            DuplicateRun(
                key=copies[0].key,
                locations=tuple(CorpusValidator._location(r) for r in copies),
            )
            for copies in by_identity.values()
            if len(copies) > 1
        ]

    @staticmethod
    def build_report(runs: Iterable[HpoRun]) -> ValidationReport:
        """Summarize a corpus without failing on duplicates."""
        runs = list(runs)
        lengths = Counter(run.length for run in runs)
        studies = Counter(run.key.study for run in runs)
        return ValidationReport(
            n_runs=len(runs),
            duplicates=tuple(CorpusValidator.find_duplicates(runs)),
            length_histogram=dict(sorted(lengths.items())),
            runs_per_study=dict(sorted(studies.items())),
        )

    @staticmethod
    def validate_corpus(runs: Iterable[HpoRun]) -> ValidationReport:
        """
        Summarize a corpus and fail on duplicated run keys.

        Raises:
            ValidationError: If two runs share a RunKey identity (DUPLICATE_RUN_KEY)
        """
        report = CorpusValidator.build_report(runs)
        if report.duplicates:
            details = "; ".join(
                f"{d.key.label()} at {', '.join(d.locations)}" for d in report.duplicates
            )
            raise ValidationError(f"duplicate run keys: {details}", "DUPLICATE_RUN_KEY")
        return report


def validate_corpus(runs: Iterable[HpoRun]) -> ValidationReport:
    return CorpusValidator.validate_corpus(runs)
