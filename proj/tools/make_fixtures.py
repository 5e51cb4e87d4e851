#!/usr/bin/env python3
"""Regenerates the HTTP fixtures under tests/fixtures.

Each fixture directory serves one replay scenario: a file per URL, named by
the FNV-1a 64-bit hash of the URL, holding the status line and the verbatim
body. A manifest.json per directory maps hashes back to URLs for humans.

The output is deterministic; run it only when the fixture corpus itself
needs to change, then commit the results.
"""

import argparse
import itertools
import json
import string
from pathlib import Path

SP500_URL = "https://en.wikipedia.org/wiki/List_of_S%26P_500_companies"
NASDAQ100_URL = "https://en.wikipedia.org/wiki/Nasdaq-100"
NASDAQ_ALL_URL = "https://datahub.io/core/nasdaq-listings/r/nasdaq-listed-symbols.csv"
QUOTE_BASE = "https://query1.finance.yahoo.com/v7/finance/download"

# 2020-01-02 00:00:00Z and 2020-01-10 23:59:00Z
QUOTE_QUERY = "period1=1577923200&period2=1578700740&interval=1d&events=history&includeAdjustedClose=true"


def fnv1a64(text: str) -> str:
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return format(h, "016x")


def write_dir(root: Path, name: str, responses: dict[str, tuple[int, str]]) -> None:
    directory = root / name
    directory.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for url, (status, body) in responses.items():
        key = fnv1a64(url)
        manifest[key] = url
        (directory / f"{key}.http").write_bytes(f"{status}\n{body}".encode("utf-8"))
    (directory / "manifest.json").write_text(
        json.dumps(dict(sorted(manifest.items())), indent=2) + "\n"
    )
    print(f"{name}: {len(responses)} fixture(s)")


def synthetic_symbols(count: int, taken: set[str]) -> list[str]:
    out = []
    for length in (3, 4):
        for combo in itertools.product(string.ascii_uppercase, repeat=length):
            sym = "".join(combo)
            if sym in taken:
                continue
            taken.add(sym)
            out.append(sym)
            if len(out) == count:
                return out
    raise AssertionError("symbol space exhausted")


SP500_REAL = [
    "MMM", "AOS", "ABT", "ABBV", "ACN", "ADBE", "AMD", "AES", "AFL", "A",
    "APD", "ABNB", "AKAM", "ALB", "ARE", "ALGN", "ALLE", "LNT", "ALL", "GOOGL",
    "GOOG", "MO", "AMZN", "AMCR", "AEE", "AAL", "AEP", "AXP", "AIG", "AMT",
    "AWK", "AMP", "AME", "AMGN", "APH", "ADI", "ANSS", "AON", "APA", "AAPL",
    "AMAT", "APTV", "ACGL", "ADM", "ANET", "AJG", "AIZ", "T", "ATO", "ADSK",
    "ADP", "AZO", "AVB", "AVY", "AXON", "BKR", "BALL", "BAC", "BBWI", "BAX",
    "BDX", "BRK.B", "BBY", "BIO", "TECH", "BIIB", "BLK", "BX", "BA", "BKNG",
    "BWA", "BXP", "BSX", "BMY", "AVGO", "BR", "BRO", "BF.B", "BG", "CHRW",
    "CDNS", "CZR", "CPT", "CPB", "COF", "CAH", "KMX", "CCL", "CARR", "CTLT",
    "CAT", "CBOE", "CBRE", "CDW", "CE", "COR", "CNC", "CNP", "CF", "CRL",
]

NASDAQ100_REAL = [
    "AAPL", "MSFT", "NVDA", "GOOGL", "GOOG", "AMZN", "META", "AVGO", "TSLA",
    "COST", "ASML", "PEP", "AZN", "ADBE", "AMD", "LIN", "CSCO", "QCOM", "TMUS",
    "INTU", "AMAT", "TXN", "CMCSA", "ISRG", "AMGN", "HON", "BKNG", "VRTX",
    "PANW", "ADP", "SBUX", "GILD", "MU", "INTC", "ADI", "LRCX", "MELI", "PYPL",
    "REGN", "KLAC", "SNPS", "CDNS", "PDD", "MDLZ", "CSX", "MAR", "CTAS", "ORLY",
    "CRWD", "NXPI", "ABNB", "PCAR", "ROP", "WDAY", "MRVL", "CPRT", "MNST",
    "DASH", "ODFL", "ROST", "AEP", "FTNT", "KDP", "MRNA", "FAST", "PAYX", "DDOG",
    "KHC", "CHTR", "IDXX", "EA", "GEHC", "LULU", "EXC", "VRSK", "CTSH", "CCEP",
    "BKR", "XEL", "CSGP", "ANSS", "ZS", "DXCM", "TTD", "ON", "FANG", "TEAM",
    "CDW", "BIIB", "WBD", "GFS", "MDB", "ILMN", "DLTR", "WBA", "SIRI", "ARM",
    "SMCI", "TTWO", "QQQM", "SPLK",
]


def sp500_html() -> str:
    taken = set(SP500_REAL)
    symbols = SP500_REAL + synthetic_symbols(503 - len(SP500_REAL), taken)
    assert len(symbols) == 503 and len(set(symbols)) == 503

    sectors = [
        "Industrials", "Health Care", "Information Technology", "Utilities",
        "Financials", "Materials", "Consumer Discretionary", "Real Estate",
        "Communication Services", "Consumer Staples", "Energy",
    ]
    names = {
        "MMM": "3M", "T": "AT&amp;T", "MO": "Altria", "BRK.B": "Berkshire Hathaway (Class B)",
        "BF.B": "Brown&#8211;Forman (Class B)", "AAPL": "Apple Inc.", "AMZN": "Amazon.com, Inc.",
        "PG": "Procter &amp; Gamble", "JNJ": "Johnson &amp; Johnson",
    }

    rows = []
    for i, sym in enumerate(symbols):
        href_sym = sym.replace(".", "-")
        company = names.get(sym, f"{sym.title()} Corporation")
        sector = sectors[i % len(sectors)]
        rows.append(
            "<tr>\n"
            f'<td><a rel="nofollow" class="external text" '
            f'href="https://www.nyse.com/quote/XNYS:{href_sym}">{sym}</a>\n</td>\n'
            f'<td><a href="/wiki/{sym}" title="{company}">{company}</a></td>\n'
            f"<td>{sector}</td>\n"
            f"<td>{sector} &amp; Services</td>\n"
            f'<td><a href="/wiki/Saint_Paul,_Minnesota">Saint Paul, Minnesota</a></td>\n'
            f"<td>1957-03-04</td>\n"
            f"<td>{66740 + i:07d}</td>\n"
            f"<td>1902</td></tr>"
        )

    changes_rows = "\n".join(
        "<tr>\n"
        f"<td>October {d}, 2023</td>\n<td>HUBB</td>\n<td>Hubbell Incorporated</td>\n"
        f"<td>ORGN</td>\n<td>Organon &amp; Co.</td>\n<td>Market capitalization change</td></tr>"
        for d in (18, 3)
    )

    return f"""<!DOCTYPE html>
<html class="client-nojs" lang="en" dir="ltr">
<head>
<meta charset="UTF-8"/>
<title>List of S&amp;P 500 companies - Wikipedia</title>
</head>
<body class="skin-vector">
<div id="content" class="mw-body" role="main">
<h1 id="firstHeading" class="firstHeading">List of S&amp;P 500 companies</h1>
<div id="bodyContent" class="vector-body">
<p>The <b>S&amp;P 500</b> is a stock market index maintained by S&amp;P Dow Jones Indices.
It comprises 503 common stocks issued by 500 large-cap companies traded on the American
stock exchanges. <!-- constituent count includes dual class shares --></p>
<h2><span class="mw-headline" id="Selected_changes">Components</span></h2>
<table class="wikitable sortable" id="constituents">
<tbody><tr>
<th>Symbol</th>
<th>Security</th>
<th>GICS Sector</th>
<th>GICS Sub-Industry</th>
<th>Headquarters Location</th>
<th>Date added</th>
<th>CIK</th>
<th>Founded
</th></tr>
{chr(10).join(rows)}
</tbody></table>
<h2><span class="mw-headline" id="Recent_changes">Selected changes to the list of S&amp;P 500 components</span></h2>
<table class="wikitable sortable" id="changes">
<tbody><tr>
<th>Date</th>
<th>Added ticker</th>
<th>Added security</th>
<th>Removed ticker</th>
<th>Removed security</th>
<th>Reason</th></tr>
{changes_rows}
</tbody></table>
</div>
</div>
</body>
</html>
"""


def nasdaq100_html() -> str:
    taken = set(NASDAQ100_REAL)
    symbols = NASDAQ100_REAL[:98] + synthetic_symbols(3, taken)
    assert len(symbols) == 101 and len(set(symbols)) == 101

    sidebar_tables = "\n".join(
        f"""<table class="infobox"><tbody>
<tr><th>{header}</th></tr>
<tr><td>{value}</td></tr>
</tbody></table>"""
        for header, value in [
            ("Foundation", "January 31, 1985"),
            ("Operator", "Nasdaq, Inc."),
            ("Exchanges", "Nasdaq"),
            ("Constituents", "101"),
        ]
    )

    rows = "\n".join(
        "<tr>\n"
        f"<td>{sym.title()} Incorporated</td>\n"
        f"<td>{sym}</td>\n"
        f"<td>Information Technology</td>\n"
        f"<td>Semiconductors &amp; Semiconductor Equipment</td></tr>"
        for sym in symbols
    )

    return f"""<!DOCTYPE html>
<html class="client-nojs" lang="en" dir="ltr">
<head>
<meta charset="UTF-8"/>
<title>Nasdaq-100 - Wikipedia</title>
</head>
<body>
<div id="content" class="mw-body">
<h1 id="firstHeading">Nasdaq-100</h1>
<p>The <b>Nasdaq-100</b> is a stock market index made up of equity securities issued by
100 of the largest non-financial companies listed on the Nasdaq stock exchange.</p>
{sidebar_tables}
<h2><span class="mw-headline" id="Components">Components</span></h2>
<table class="wikitable sortable" id="constituents">
<tbody><tr>
<th>Company</th>
<th>Ticker</th>
<th><a href="/wiki/Global_Industry_Classification_Standard">GICS</a> Sector</th>
<th>GICS Sub-Industry</th></tr>
{rows}
</tbody></table>
</div>
</body>
</html>
"""


def nasdaq_all_csv() -> str:
    taken: set[str] = set()
    real = ["AAPL", "MSFT", "NVDA", "AMZN", "GOOGL", "GOOG", "META", "TSLA"]
    taken.update(real)
    symbols = real + synthetic_symbols(2967 - len(real), taken)
    assert len(symbols) == 2967 and len(set(symbols)) == 2967

    lines = ["Symbol,Company Name"]
    for sym in symbols:
        company = f"{sym.title()} Holdings, Inc."
        lines.append(f'{sym},"{company}"')
    return "\n".join(lines) + "\n"


QUOTE_HEADER = "Date,Open,High,Low,Close,Adj Close,Volume"

AAPL_BODY = f"""{QUOTE_HEADER}
2020-01-02,74.059998,75.150002,73.797501,75.087502,73.449394,135480400
2020-01-03,74.287498,75.144997,74.125,74.357498,72.735321,146322800
2020-01-06,73.447502,74.989998,73.1875,74.949997,73.314888,118387200
2020-01-07,null,null,null,null,null,null
2020-01-08,74.290001,76.110001,74.290001,75.797501,74.143906,132079200
2020-01-09,76.809998,77.607498,76.550003,77.407501,75.718781,170108400
2020-01-10,77.650002,78.167503,77.0625,77.582497,75.889984,140644800
"""

# 2020-01-08 carries Low above Open on purpose; the bounds check must flag it.
MSFT_BODY = f"""{QUOTE_HEADER}
2020-01-02,158.779999,160.729996,158.330002,160.619995,155.203476,22622100
2020-01-03,158.320007,159.949997,158.059998,158.619995,153.270905,21116200
2020-01-06,157.080002,159.100006,156.509995,159.029999,153.667084,20813700
2020-01-07,159.320007,159.669998,157.320007,157.580002,152.265900,21634100
2020-01-08,157.500000,160.800003,158.000000,160.089996,154.691266,27746500
2020-01-09,161.839996,162.220001,161.029999,162.089996,156.623825,21385000
2020-01-10,162.820007,163.220001,161.179993,161.339996,155.899123,20725900
"""

NVDA_BODY = f"""{QUOTE_HEADER}
2020-01-02,59.685,59.977501,59.125,59.977501,59.552986,23753600
2020-01-03,58.775002,59.459999,58.525002,59.017502,58.599781,20538400
2020-01-06,58.205002,59.317501,58.004002,59.264999,58.845526,26263600
2020-01-07,59.675,60.442501,59.580002,59.982498,59.557945,31485600
2020-01-08,59.9525,60.509998,59.612499,60.095001,59.669655,27710800
2020-01-09,60.965,61.465,60.712502,61.252499,60.818965,25678400
2020-01-10,61.50,62.0825,61.413799,62.057499,61.618279,25176000
"""

NO_DATA_BODY = "404 Not Found: No data found, symbol may be delisted"


def quote_url(symbol: str) -> str:
    return f"{QUOTE_BASE}/{symbol}?{QUOTE_QUERY}"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "tests" / "fixtures")
    args = parser.parse_args()

    write_dir(args.out, "sp500", {SP500_URL: (200, sp500_html())})
    write_dir(args.out, "nasdaq100", {NASDAQ100_URL: (200, nasdaq100_html())})
    write_dir(args.out, "nasdaq_all", {NASDAQ_ALL_URL: (200, nasdaq_all_csv())})
    write_dir(
        args.out,
        "quotes",
        {
            quote_url("AAPL"): (200, AAPL_BODY),
            quote_url("MSFT"): (200, MSFT_BODY),
            quote_url("NVDA"): (200, NVDA_BODY),
            quote_url("QQQQ"): (404, NO_DATA_BODY),
            quote_url("YYYY"): (200, QUOTE_HEADER + "\n"),
        },
    )
    write_dir(
        args.out,
        "quotes_err",
        {
            quote_url("AAPL"): (200, AAPL_BODY),
            quote_url("ERRT"): (500, "Internal Server Error"),
        },
    )


if __name__ == "__main__":
    main()
