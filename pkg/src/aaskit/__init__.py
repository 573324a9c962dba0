"""Alternative answer sets for open-ended VQA vocabularies.

Builds ranked sets of semantically acceptable answers for every label in
a dataset's answer vocabulary, evaluates predictions under the resulting
semantic metric, and exports soft training targets.
"""

__version__ = "0.1.0"

from .core import AnswerSet, Label, PredictionRecord, QAItem, ScoredCandidate, normalize

__all__ = [
    "AnswerSet",
    "Label",
    "PredictionRecord",
    "QAItem",
    "ScoredCandidate",
    "normalize",
    "__version__",
]
