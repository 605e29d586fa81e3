"""Print the full statistics report for each demo document.

Shows everything the indexer derives from a text: structural counts,
readability, and the word frequency list that the top-10 keyword table is
cut from.

Run:  python demos/text_statistics.py
"""

from pathlib import Path

from clickrank.textstats import analyze_text, extract_keywords, render_report

HERE = Path(__file__).parent

for file in sorted((HERE / "corpus").glob("*.txt")):
    text = file.read_text(encoding="utf-8")
    print(f"===== {file.name} =====")
    print(render_report(analyze_text(text)))
    keywords = extract_keywords(text, doc_id=file.stem)
    print("Stored keywords:", ", ".join(f"{e.term}({e.frequency})" for e in keywords))
    print()
