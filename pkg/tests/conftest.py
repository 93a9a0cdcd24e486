import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from xmlsumm import build_stats, parse_document  # noqa: E402

# A small movie record: title, cast of actor/role pairs, genres.
ODYSSEY = b"""<?xml version="1.0" encoding="UTF-8"?>
<movie>
  <title>2001: A Space Odyssey</title>
  <prod_year>1968</prod_year>
  <director>Kubrick, Stanley</director>
  <genres>
    <genre>Adventure</genre>
    <genre>Sci-Fi</genre>
  </genres>
  <cast>
    <casting><actor>Dullea, Keir</actor><role>Dr. Dave Bowman</role></casting>
    <casting><actor>Lockwood, Gary</actor><role>Dr. Frank Poole</role></casting>
    <casting><actor>Sylvester, William</actor><role>Dr. Heywood R. Floyd</role></casting>
  </cast>
  <trivia>Kubrick wanted the film to be a nonverbal experience.</trivia>
  <trivia>The film was shot by Kubrick in England.</trivia>
  <trivia>Early computer terminals in the film were props.</trivia>
</movie>
"""

TOY_DOCS = [
    b"<m><title>A</title><actor>p</actor><actor>q</actor><actor>r</actor><actor>s</actor></m>",
    b"<m><title>B</title><actor>p</actor><actor>t</actor></m>",
    b"<m><actor>u</actor><actor>v</actor><genre>Crime</genre></m>",
    b"<m><title>C</title><genre>Crime</genre></m>",
]


@pytest.fixture
def odyssey():
    return parse_document(ODYSSEY, "odyssey")


@pytest.fixture
def toy_docs():
    return [parse_document(d, f"toy{i}") for i, d in enumerate(TOY_DOCS)]


@pytest.fixture
def toy_stats(toy_docs):
    return build_stats(toy_docs)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, ok = RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}")
