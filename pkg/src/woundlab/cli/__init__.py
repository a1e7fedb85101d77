"""Command line interface, expression syntax and the example corpus."""

from .corpus import RunReport, load_corpus, parse_corpus, run_corpus
from .expr import format_value, parse, parse_expression, parse_field
from .main import main, run

__all__ = ["RunReport", "load_corpus", "parse_corpus", "run_corpus", "format_value", "parse",
           "parse_expression", "parse_field", "main", "run"]
