#!/usr/bin/env python3
# Copyright 2026 The KBP Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled synthetic fixture under data/synthetic/.

The corpus is 50 hand-templated sentences, each with one gold triple, over
a small KB. Sentences arrive unlinked (one carries a pre-existing link) so
the pipeline exercises the linker, including an ambiguous surface form and
overlapping multi-token forms.

Usage: make_synthetic.py [OUT_DIR]
"""

import json
import os
import sys

ENTITIES = [
    # iri, surface forms, class
    ("fkgr:Belarus", ["Belarus"], "fkgo:Country"),
    ("fkgr:France", ["France"], "fkgo:Country"),
    ("fkgr:Iran", ["Iran"], "fkgo:Country"),
    ("fkgr:Japan", ["Japan"], "fkgo:Country"),
    ("fkgr:Brazil", ["Brazil"], "fkgo:Country"),
    ("fkgr:Georgia_(country)", ["Georgia"], "fkgo:Country"),
    ("fkgr:Georgia_(US_state)", ["Georgia"], "fkgo:Region"),
    ("fkgr:Minsk", ["Minsk"], "fkgo:City"),
    ("fkgr:Paris", ["Paris"], "fkgo:City"),
    ("fkgr:Tehran", ["Tehran"], "fkgo:City"),
    ("fkgr:Tokyo", ["Tokyo"], "fkgo:City"),
    ("fkgr:Brasilia", ["Brasilia"], "fkgo:City"),
    ("fkgr:Tbilisi", ["Tbilisi"], "fkgo:City"),
    ("fkgr:Isfahan", ["Isfahan"], "fkgo:City"),
    ("fkgr:Osaka", ["Osaka"], "fkgo:City"),
    ("fkgr:New_York_City", ["New York City", "NYC"], "fkgo:City"),
    ("fkgr:New_York_(state)", ["New York"], "fkgo:Region"),
    ("fkgr:Alexander_Lukashenko", ["Alexander Lukashenko", "Lukashenko"], "fkgo:Person"),
    ("fkgr:Emmanuel_Macron", ["Emmanuel Macron", "Macron"], "fkgo:Person"),
    ("fkgr:Lula", ["Lula"], "fkgo:Person"),
    ("fkgr:Ali_Karimi", ["Ali Karimi"], "fkgo:Person"),
    ("fkgr:Sara", ["Sara"], "fkgo:Person"),
    ("fkgr:Kenji", ["Kenji"], "fkgo:Person"),
    ("fkgr:Nino", ["Nino"], "fkgo:Person"),
    ("fkgr:Hiro", ["Hiro"], "fkgo:Person"),
    ("fkgr:Acme", ["Acme"], "fkgo:Organisation"),
    ("fkgr:Globex", ["Globex"], "fkgo:Organisation"),
    ("fkgr:Initech", ["Initech"], "fkgo:Organisation"),
    ("fkgr:Umbrella", ["Umbrella"], "fkgo:Organisation"),
]

PREDICATES = [
    "fkgo:birthPlace",
    "fkgo:capital",
    "fkgo:founder",
    "fkgo:headquarter",
    "fkgo:leaderName",
    "fkgo:nationality",
    "fkgo:residence",
]

FACTS = [
    ("fkgr:Belarus", "fkgo:capital", "fkgr:Minsk"),
    ("fkgr:France", "fkgo:capital", "fkgr:Paris"),
    ("fkgr:Iran", "fkgo:capital", "fkgr:Tehran"),
    ("fkgr:Japan", "fkgo:capital", "fkgr:Tokyo"),
    ("fkgr:Belarus", "fkgo:leaderName", "fkgr:Alexander_Lukashenko"),
    ("fkgr:France", "fkgo:leaderName", "fkgr:Emmanuel_Macron"),
    ("fkgr:Ali_Karimi", "fkgo:birthPlace", "fkgr:Tehran"),
    ("fkgr:Sara", "fkgo:birthPlace", "fkgr:Paris"),
    ("fkgr:Kenji", "fkgo:birthPlace", "fkgr:Tokyo"),
    ("fkgr:Acme", "fkgo:founder", "fkgr:Ali_Karimi"),
    ("fkgr:Globex", "fkgo:founder", "fkgr:Sara"),
    ("fkgr:Ali_Karimi", "fkgo:nationality", "fkgr:Iran"),
    ("fkgr:Kenji", "fkgo:nationality", "fkgr:Japan"),
    ("fkgr:Acme", "fkgo:headquarter", "fkgr:Tehran"),
    ("fkgr:Globex", "fkgo:headquarter", "fkgr:Paris"),
    ("fkgr:Sara", "fkgo:residence", "fkgr:Paris"),
]

MAPPING = [
    ("leads", "fkgo:leaderName"),
    ("was born", "fkgo:birthPlace"),
    ("born in", "fkgo:birthPlace"),
    ("capital", "fkgo:capital"),
]

STOPWORDS = ["the", "a", "is", "was", "in", "of", "to", "with", ".", ","]

TEMPLATES_LIST = ["V", "V P", "V W* P"]

RULES = """\
# Token-pattern rules for the synthetic corpus.
rule capital -> fkgo:capital : (OBJ: class:fkgo:City+) "is" "the" "capital" "of" (SUBJ: class:fkgo:Country+)
rule leader -> fkgo:leaderName : (OBJ: class:fkgo:Person+) "leads" (SUBJ: class:fkgo:Country+)
rule nationality -> fkgo:nationality : (SUBJ: class:fkgo:Person+) "is" "a" (OBJ: class:fkgo:Country+) "citizen"
rule born -> fkgo:birthPlace : (SUBJ: pos:PROPN+) "was" "born" "in" (OBJ: pos:PROPN+)
"""

NER = {
    "fkgo:Country": "LOC",
    "fkgo:Region": "LOC",
    "fkgo:City": "LOC",
    "fkgo:Person": "PER",
    "fkgo:Organisation": "ORG",
}

# Sentence templates. Items are (name, word-or-slot, pos, head name, rel);
# a slot "$X" expands to the tokens of the entity mention, whose first
# token carries the item's head and relation while the others attach to it
# with "flat".
TEMPLATES = {
    "capital": [
        ("c", "$city", "PROPN", "cap", "nsubj"),
        ("is", "is", "AUX", "cap", "cop"),
        ("the", "the", "DET", "cap", "det"),
        ("cap", "capital", "NOUN", None, "root"),
        ("of", "of", "ADP", "k", "case"),
        ("k", "$country", "PROPN", "cap", "nmod"),
        ("pt", ".", "PUNCT", "cap", "punct"),
    ],
    "leader": [
        ("p", "$person", "PROPN", "v", "nsubj"),
        ("v", "leads", "VERB", None, "root"),
        ("k", "$country", "PROPN", "v", "obj"),
        ("pt", ".", "PUNCT", "v", "punct"),
    ],
    "birth": [
        ("p", "$person", "PROPN", "v", "nsubj:pass"),
        ("was", "was", "AUX", "v", "aux:pass"),
        ("v", "born", "VERB", None, "root"),
        ("in", "in", "ADP", "c", "case"),
        ("c", "$city", "PROPN", "v", "obl"),
        ("pt", ".", "PUNCT", "v", "punct"),
    ],
    "founder": [
        ("p", "$person", "PROPN", "v", "nsubj"),
        ("v", "founded", "VERB", None, "root"),
        ("o", "$org", "PROPN", "v", "obj"),
        ("in", "in", "ADP", "c", "case"),
        ("c", "$city", "PROPN", "v", "obl"),
        ("pt", ".", "PUNCT", "v", "punct"),
    ],
    "nationality": [
        ("p", "$person", "PROPN", "cit", "nsubj"),
        ("is", "is", "AUX", "cit", "cop"),
        ("a", "a", "DET", "cit", "det"),
        ("k", "$country", "PROPN", "cit", "compound"),
        ("cit", "citizen", "NOUN", None, "root"),
        ("pt", ".", "PUNCT", "cit", "punct"),
    ],
    "headquarter": [
        ("o", "$org", "PROPN", "v", "nsubj"),
        ("v", "set", "VERB", None, "root"),
        ("up", "up", "ADP", "v", "compound:prt"),
        ("hq", "headquarters", "NOUN", "v", "obj"),
        ("in", "in", "ADP", "c", "case"),
        ("c", "$city", "PROPN", "v", "obl"),
        ("pt", ".", "PUNCT", "v", "punct"),
    ],
    "moved": [
        ("p", "$person", "PROPN", "v", "nsubj"),
        ("v", "moved", "VERB", None, "root"),
        ("to", "to", "ADP", "c", "case"),
        ("c", "$city", "PROPN", "v", "obl"),
        ("with", "with", "ADP", "q", "case"),
        ("q", "$friend", "PROPN", "v", "obl"),
        ("pt", ".", "PUNCT", "v", "punct"),
    ],
    "visited": [
        ("p", "$person", "PROPN", "v", "nsubj"),
        ("v", "visited", "VERB", None, "root"),
        ("c", "$city", "PROPN", "v", "obj"),
        ("pt", ".", "PUNCT", "v", "punct"),
    ],
}

# (template, slot fillers as surface mentions, gold (subject slot,
# predicate, object slot)).
SENTENCES = [
    ("capital", {"city": "Minsk", "country": "Belarus"}, ("country", "fkgo:capital", "city")),
    ("capital", {"city": "Paris", "country": "France"}, ("country", "fkgo:capital", "city")),
    ("capital", {"city": "Tehran", "country": "Iran"}, ("country", "fkgo:capital", "city")),
    ("capital", {"city": "Tokyo", "country": "Japan"}, ("country", "fkgo:capital", "city")),
    ("capital", {"city": "Brasilia", "country": "Brazil"}, ("country", "fkgo:capital", "city")),
    ("capital", {"city": "Tbilisi", "country": "Georgia"}, ("country", "fkgo:capital", "city")),
    ("capital", {"city": "Minsk", "country": "Belarus"}, ("country", "fkgo:capital", "city")),
    ("capital", {"city": "New York City", "country": "Brazil"}, ("country", "fkgo:capital", "city")),
    ("leader", {"person": "Alexander Lukashenko", "country": "Belarus"}, ("country", "fkgo:leaderName", "person")),
    ("leader", {"person": "Lukashenko", "country": "Belarus"}, ("country", "fkgo:leaderName", "person")),
    ("leader", {"person": "Emmanuel Macron", "country": "France"}, ("country", "fkgo:leaderName", "person")),
    ("leader", {"person": "Macron", "country": "France"}, ("country", "fkgo:leaderName", "person")),
    ("leader", {"person": "Lula", "country": "Brazil"}, ("country", "fkgo:leaderName", "person")),
    ("leader", {"person": "Nino", "country": "Georgia"}, ("country", "fkgo:leaderName", "person")),
    ("leader", {"person": "Hiro", "country": "Japan"}, ("country", "fkgo:leaderName", "person")),
    ("leader", {"person": "Ali Karimi", "country": "Iran"}, ("country", "fkgo:leaderName", "person")),
    ("birth", {"person": "Ali Karimi", "city": "Tehran"}, ("person", "fkgo:birthPlace", "city")),
    ("birth", {"person": "Sara", "city": "Paris"}, ("person", "fkgo:birthPlace", "city")),
    ("birth", {"person": "Kenji", "city": "Tokyo"}, ("person", "fkgo:birthPlace", "city")),
    ("birth", {"person": "Kenji", "city": "New York City"}, ("person", "fkgo:birthPlace", "city")),
    ("birth", {"person": "Nino", "city": "Georgia"}, ("person", "fkgo:birthPlace", "city")),
    ("birth", {"person": "Hiro", "city": "Osaka"}, ("person", "fkgo:birthPlace", "city")),
    ("birth", {"person": "Lula", "city": "New York"}, ("person", "fkgo:birthPlace", "city")),
    ("birth", {"person": "Macron", "city": "Paris"}, ("person", "fkgo:birthPlace", "city")),
    ("birth", {"person": "Sara", "city": "Isfahan"}, ("person", "fkgo:birthPlace", "city")),
    ("founder", {"person": "Ali Karimi", "org": "Acme", "city": "Tehran"}, ("org", "fkgo:founder", "person")),
    ("founder", {"person": "Sara", "org": "Globex", "city": "Paris"}, ("org", "fkgo:founder", "person")),
    ("founder", {"person": "Kenji", "org": "Initech", "city": "Osaka"}, ("org", "fkgo:founder", "person")),
    ("founder", {"person": "Hiro", "org": "Umbrella", "city": "Tokyo"}, ("org", "fkgo:founder", "person")),
    ("founder", {"person": "Nino", "org": "Initech", "city": "Tbilisi"}, ("org", "fkgo:founder", "person")),
    ("founder", {"person": "Lula", "org": "Umbrella", "city": "Brasilia"}, ("org", "fkgo:founder", "person")),
    ("founder", {"person": "Sara", "org": "Acme", "city": "NYC"}, ("org", "fkgo:founder", "person")),
    ("nationality", {"person": "Ali Karimi", "country": "Iran"}, ("person", "fkgo:nationality", "country")),
    ("nationality", {"person": "Kenji", "country": "Japan"}, ("person", "fkgo:nationality", "country")),
    ("nationality", {"person": "Sara", "country": "France"}, ("person", "fkgo:nationality", "country")),
    ("nationality", {"person": "Nino", "country": "Georgia"}, ("person", "fkgo:nationality", "country")),
    ("nationality", {"person": "Lula", "country": "Brazil"}, ("person", "fkgo:nationality", "country")),
    ("nationality", {"person": "Hiro", "country": "Japan"}, ("person", "fkgo:nationality", "country")),
    ("nationality", {"person": "Emmanuel Macron", "country": "France"}, ("person", "fkgo:nationality", "country")),
    ("headquarter", {"org": "Acme", "city": "Tehran"}, ("org", "fkgo:headquarter", "city")),
    ("headquarter", {"org": "Globex", "city": "Paris"}, ("org", "fkgo:headquarter", "city")),
    ("headquarter", {"org": "Initech", "city": "Osaka"}, ("org", "fkgo:headquarter", "city")),
    ("headquarter", {"org": "Umbrella", "city": "Tokyo"}, ("org", "fkgo:headquarter", "city")),
    ("headquarter", {"org": "Acme", "city": "New York City"}, ("org", "fkgo:headquarter", "city")),
    ("headquarter", {"org": "Globex", "city": "Minsk"}, ("org", "fkgo:headquarter", "city")),
    ("moved", {"person": "Sara", "city": "Paris", "friend": "Kenji"}, ("person", "fkgo:residence", "city")),
    ("moved", {"person": "Hiro", "city": "Osaka", "friend": "Nino"}, ("person", "fkgo:residence", "city")),
    ("moved", {"person": "Lula", "city": "Brasilia", "friend": "Macron"}, ("person", "fkgo:residence", "city")),
    ("visited", {"person": "Ali Karimi", "city": "Isfahan"}, ("person", "fkgo:residence", "city")),
    ("visited", {"person": "Nino", "city": "Tbilisi"}, ("person", "fkgo:residence", "city")),
]

# The gold entity for a mention; ambiguous mentions are resolved by the
# class the template expects.
SLOT_CLASS = {
    "city": ("fkgo:City", "fkgo:Region"),
    "country": ("fkgo:Country",),
    "person": ("fkgo:Person",),
    "friend": ("fkgo:Person",),
    "org": ("fkgo:Organisation",),
}

# Sentence index (0-based) whose subject mention arrives already linked.
PRELINKED = 12


def resolve(mention, slot):
    matches = [(iri, cls) for iri, forms, cls in ENTITIES if mention in forms]
    for wanted in SLOT_CLASS[slot]:
        for iri, cls in matches:
            if cls == wanted:
                return iri, cls
    raise ValueError(f"no entity for {mention!r} as {slot}")


def build_sentence(index, template, fillers, gold):
    items = TEMPLATES[template]
    tokens, pos, ner, spans = [], [], [], {}
    first = {}
    rows = []  # (token position, head name or position, rel)
    for name, word, tag, head, rel in items:
        if word.startswith("$"):
            slot = word[1:]
            mention = fillers[slot].split()
            _, cls = resolve(fillers[slot], slot)
            start = len(tokens)
            spans[slot] = (start, start + len(mention))
            first[name] = start
            for k, w in enumerate(mention):
                tokens.append(w)
                pos.append(tag)
                ner.append(("B-" if k == 0 else "I-") + NER[cls])
                rows.append((head, rel) if k == 0 else (("#", start), "flat"))
        else:
            first[name] = len(tokens)
            tokens.append(word)
            pos.append(tag)
            ner.append("O")
            rows.append((head, rel))
    deps = []
    for head, rel in rows:
        if head is None:
            deps.append({"head": 0, "rel": rel})
        elif isinstance(head, tuple):
            deps.append({"head": head[1] + 1, "rel": rel})
        else:
            deps.append({"head": first[head] + 1, "rel": rel})
    subject_slot, predicate, object_slot = gold
    subject, subject_class = resolve(fillers[subject_slot], subject_slot)
    obj, object_class = resolve(fillers[object_slot], object_slot)
    links = []
    if index == PRELINKED:
        start, end = spans[subject_slot]
        links.append({"start": start, "end": end, "entity": subject,
                      "confidence": 1.0, "class": subject_class})
    return {
        "id": f"s{index + 1:03d}",
        "text": " ".join(tokens),
        "tokens": tokens,
        "pos": pos,
        "ner": ner,
        "dep": deps,
        "links": links,
        "subject": subject,
        "object": obj,
        "predicate": predicate,
        "subject_class": subject_class,
        "object_class": object_class,
    }


def pattern_key(record):
    return [{"pos": p, "head": d["head"], "rel": d["rel"]}
            for p, d in zip(record["pos"], record["dep"])]


# Expert annotations for the dependency patterns of single-token mentions,
# as 1-based role positions.
PATTERN_ROLES = {
    "capital": {"subject": [6], "object": [1], "predicate": [4]},
    "leader": {"subject": [1], "object": [3], "predicate": [2]},
    "founder": {"subject": [1], "object": [3], "predicate": [2]},
    # Points at the unlinked "headquarters" token; emits nothing.
    "headquarter": {"subject": [1], "object": [4], "predicate": [2, 3]},
}


def write_lines(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line + "\n")


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "synthetic")
    kb_dir = os.path.join(out, "kb")
    os.makedirs(kb_dir, exist_ok=True)

    records = [build_sentence(i, t, f, g) for i, (t, f, g) in enumerate(SENTENCES)]
    assert len(records) == 50
    dump = lambda obj: json.dumps(obj, ensure_ascii=False, separators=(",", ":"))
    write_lines(os.path.join(out, "corpus.jsonl"), [dump(r) for r in records])

    write_lines(os.path.join(kb_dir, "entities.jsonl"),
                [dump({"iri": iri, "surface_forms": forms, "class": cls})
                 for iri, forms, cls in ENTITIES])
    write_lines(os.path.join(kb_dir, "predicates.txt"), PREDICATES)
    write_lines(os.path.join(kb_dir, "facts.tsv"), ["\t".join(f) for f in FACTS])
    write_lines(os.path.join(kb_dir, "mapping.tsv"), ["\t".join(m) for m in MAPPING])

    write_lines(os.path.join(out, "stopwords.txt"), STOPWORDS)
    with open(os.path.join(out, "templates.json"), "w") as f:
        f.write(json.dumps(TEMPLATES_LIST) + "\n")
    with open(os.path.join(out, "rules.tokpat"), "w") as f:
        f.write(RULES)

    # Pattern bank: one annotated entry per template whose mentions are all
    # single tokens, with the support it has in the corpus.
    counts = {}
    first_key = {}
    for (template, fillers, _), record in zip(SENTENCES, records):
        key = json.dumps(pattern_key(record))
        counts[key] = counts.get(key, 0) + 1
        if template in PATTERN_ROLES and all(len(v.split()) == 1 for v in fillers.values()):
            first_key.setdefault(template, key)
    bank = []
    for template in sorted(first_key):
        key = first_key[template]
        bank.append(dict({"key": json.loads(key)}, **PATTERN_ROLES[template],
                         support=counts[key]))
    write_lines(os.path.join(out, "patterns.jsonl"), [dump(p) for p in bank])

    config = {
        "corpus": "corpus.jsonl",
        "gold": "corpus.jsonl",
        "kb": "kb",
        "output_dir": "../../build/synthetic_run",
        "rules": "rules.tokpat",
        "patterns": "patterns.jsonl",
        "templates": "templates.json",
        "stopwords": "stopwords.txt",
        "extractors": ["predpatt", "deppat", "psie", "repersian", "tokpat", "distant"],
        "threshold": 0.9,
        "sweep": [round(0.1 * i, 1) for i in range(11)],
        "max_ngram": 6,
        "min_token_count": 2,
        "confidences": {"deppat": 1.0, "psie": 0.8, "repersian": 0.7, "tokpat": 0.9},
        "distant": {"verb_weight": 2, "min_score": 2},
        "canonicalizer": {"verb_weight": 1, "min_score": 1},
    }
    with open(os.path.join(out, "config.json"), "w") as f:
        f.write(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
    main()
