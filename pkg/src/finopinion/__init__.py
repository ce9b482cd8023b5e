"""Opinion-holder and multiword-expression extraction from financial filings, linked to earnings surprises."""

__version__ = "0.1.0"
