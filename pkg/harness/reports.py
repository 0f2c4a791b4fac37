import csv

HEADERS = {
    "abelian-exact": ("r", "count", "density", "limit", "residual"),
    "abelian-bruteforce": ("k", "m", "r", "bruteforce_count", "exact_count", "match"),
    "abelian-mc": ("r", "samples", "hits", "point", "ci_low", "ci_high", "exact", "limit"),
    "one-var": ("r", "density", "model", "residual", "scale"),
    "nilpotent-mc": (
        "r",
        "samples",
        "sat_lo",
        "sat_pt",
        "sat_hi",
        "ab_lo",
        "ab_pt",
        "ab_hi",
        "unknown",
        "lower_limit",
        "upper_limit",
    ),
    "zeta": ("s", "value"),
}

DELIMITERS = {"csv": ",", "tsv": "\t"}


def format_value(value):
    """Integers verbatim, reals with 9 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def write_rows(stream, subcommand, rows, fmt="csv"):
    """Write a header line and one line per row, in the fixed column order."""
    writer = csv.DictWriter(
        stream,
        fieldnames=HEADERS[subcommand],
        delimiter=DELIMITERS[fmt],
        lineterminator="\n",
    )
    writer.writeheader()
    for row in rows:
        writer.writerow({key: format_value(value) for key, value in row.items()})
