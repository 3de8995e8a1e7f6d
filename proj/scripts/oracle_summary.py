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
"""Brute-force reference for the stage counts of `kbp run`.

Recomputes every count of summary.json straight from the extraction rules
with plain Python (regular expressions for POS templates, backtracking for
token patterns, exhaustive loops everywhere else) and writes the result as
the expected summary.

Usage: oracle_summary.py CONFIG_JSON OUT_JSON
"""

import json
import os
import re
import sys
from collections import defaultdict

VERB_TAGS = {"VERB", "V"}
ADPOSITION_TAGS = {"ADP", "P", "PREP", "POSTP"}
PUNCT_TAGS = {"PUNCT"}
AUX_RELS = {"aux", "cop"}
ARG_RELS = {"nsubj", "csubj", "obj", "dobj", "iobj", "obl"}
PRED_RELS = {"aux", "neg"}
ARG_EXCLUDED = {"case", "punct", "mark", "cc"}
SUBJ_RELS = {"nsubj", "csubj"}
OBJ_RELS = {"obj", "dobj", "iobj", "xcomp", "ccomp", "attr"}
COMPOUND_RELS = {"compound", "prt"}
ORDER = ["predpatt", "deppat", "psie", "repersian", "tokpat", "distant"]


def norm(text):
    return " ".join(text.casefold().split())


def base(rel):
    return rel.split(":")[0]


def read_jsonl(path):
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def read_lines(path):
    with open(path, encoding="utf-8") as f:
        return [l.rstrip("\n") for l in f if l.strip() and not l.startswith("#")]


# ---------------------------------------------------------------------------
# Sentence helpers.

def head(s, t):
    return s["dep"][t]["head"] - 1


def rel(s, t):
    return s["dep"][t]["rel"]


def children(s, t, rels):
    return [c for c in range(len(s["tokens"])) if head(s, c) == t and base(rel(s, c)) in rels]


def is_predicate_verb(s, t):
    return (s["pos"][t] in VERB_TAGS and base(rel(s, t)) not in AUX_RELS
            and base(rel(s, t)) not in COMPOUND_RELS)


def descendants(s, t):
    out = {t}
    changed = True
    while changed:
        changed = False
        for c in range(len(s["tokens"])):
            if c not in out and head(s, c) in out:
                out.add(c)
                changed = True
    return out


def argument_span(s, t):
    tokens = {t}
    for c in range(len(s["tokens"])):
        if head(s, c) == t and base(rel(s, c)) not in ARG_EXCLUDED:
            tokens |= descendants(s, c)
    return (min(tokens), max(tokens) + 1)


def links_with_span(s, span):
    return [l for l in s["links"] if (l["start"], l["end"]) == span]


def emit(out, subjects, predicate, objects, conf, extractor, sid):
    for a in subjects:
        for b in objects:
            out.append((a["entity"], predicate, b["entity"], extractor,
                        conf * a["confidence"] * b["confidence"], sid))


def compound_phrases(s):
    out = []
    for v in range(len(s["tokens"])):
        if is_predicate_verb(s, v):
            parts = sorted(children(s, v, COMPOUND_RELS) + [v])
            out.append(" ".join(s["tokens"][p] for p in parts))
    return out


def spans_of(s):
    return sorted({(l["start"], l["end"]) for l in s["links"]})


def overlap(a, b):
    return a[0] < b[1] and b[0] < a[1]


# ---------------------------------------------------------------------------
# Linker.

def link(corpus, entities, max_ngram):
    index = defaultdict(dict)
    for e in entities:
        for form in e["surface_forms"]:
            if norm(form):
                index[norm(form)][e["iri"]] = e.get("class", "")
    out = []
    for s in corpus:
        s = dict(s)
        links = list(s["links"])
        n = len(s["tokens"])
        blocked = [False] * n
        for l in links:
            for t in range(l["start"], l["end"]):
                blocked[t] = True
        i = 0
        while i < n:
            step = 1
            for length in range(min(max_ngram, n - i), 0, -1):
                if any(blocked[i:i + length]):
                    continue
                form = norm(" ".join(s["tokens"][i:i + length]))
                if form in index:
                    owners = index[form]
                    for iri in sorted(owners):
                        links.append({"start": i, "end": i + length, "entity": iri,
                                      "confidence": 1.0 / len(owners), "class": owners[iri]})
                    step = length
                    break
            i += step
        s["links"] = links
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# Extractors.

def predpatt(s):
    out = []
    for v in range(len(s["tokens"])):
        if not is_predicate_verb(s, v):
            continue
        args = []
        for c in children(s, v, ARG_RELS):
            links = links_with_span(s, argument_span(s, c))
            if links:
                args.append(links)
        n = len(args)
        if n < 2:
            continue
        phrase = " ".join(s["tokens"][p] for p in sorted(children(s, v, PRED_RELS) + [v]))
        for i in range(n):
            for j in range(n):
                if i != j:
                    emit(out, args[i], ("raw", phrase), args[j], 1.0 / (n * (n - 1)),
                         "predpatt", s["id"])
    return out


def tightest(s, positions):
    covering = [l for l in s["links"] if all(l["start"] <= p < l["end"] for p in positions)]
    if not covering:
        return []
    width = min(l["end"] - l["start"] for l in covering)
    first = next(l for l in covering if l["end"] - l["start"] == width)
    return [l for l in covering if (l["start"], l["end"]) == (first["start"], first["end"])]


def deppat(s, bank, conf):
    key = [(p, d["head"], d["rel"]) for p, d in zip(s["pos"], s["dep"])]
    out = []
    for p in bank:
        if not (p["subject"] and p["object"] and p["predicate"]):
            continue
        if [(e["pos"], e["head"], e["rel"]) for e in p["key"]] != key:
            continue
        subjects = tightest(s, [r - 1 for r in p["subject"]])
        objects = tightest(s, [r - 1 for r in p["object"]])
        phrase = " ".join(s["tokens"][r - 1] for r in p["predicate"])
        emit(out, subjects, ("raw", phrase), objects, conf, "deppat", s["id"])
    return out


def psie(s, conf):
    out = []
    for v in range(len(s["tokens"])):
        if not is_predicate_verb(s, v):
            continue
        subjects = children(s, v, SUBJ_RELS)
        objects = children(s, v, OBJ_RELS)
        phrase = " ".join(s["tokens"][p] for p in sorted(children(s, v, COMPOUND_RELS) + [v]))
        for a in subjects:
            sl = links_with_span(s, argument_span(s, a))
            if not sl:
                continue
            for b in objects:
                emit(out, sl, ("raw", phrase), links_with_span(s, argument_span(s, b)), conf,
                     "psie", s["id"])
    return out


def template_regex(text):
    return re.compile("".join(part for part in text.split()))


def repersian(s, templates, conf):
    def cls(tag):
        if tag in VERB_TAGS:
            return "V"
        if tag in ADPOSITION_TAGS:
            return "P"
        if tag in PUNCT_TAGS:
            return "#"
        return "W"

    classes = "".join(cls(t) for t in s["pos"])
    regexes = [template_regex(t) for t in templates]
    spans = spans_of(s)
    out = []
    for left, right in zip(spans, spans[1:]):
        if left[1] > right[0]:
            continue
        t = left[1]
        while t < right[0]:
            if s["pos"][t] not in VERB_TAGS:
                t += 1
                continue
            longest = 0
            for end in range(t + 1, right[0] + 1):
                if any(r.fullmatch(classes[t:end]) for r in regexes):
                    longest = end - t
            if longest == 0:
                t += 1
                continue
            phrase = " ".join(s["tokens"][t:t + longest])
            emit(out, links_with_span(s, left), ("raw", phrase), links_with_span(s, right),
                 conf, "repersian", s["id"])
            t += longest
    return out


# Token patterns: parsed into a list of items, matched by backtracking in
# priority order (greedy quantifiers try the longer repetition first).

TOKEN_RE = re.compile(r'\s*(\(|\)|"(?:[^"\\]|\\.)*"|(?:SUBJ|OBJ):|pos:[^\s?*+{()#"]+|'
                      r'class:[^\s?*+{()#"]+|\.|[?*+]|\{\d+(?:,\d*)?\})')


def parse_rule(line):
    m = re.match(r"\s*rule\s+(\S+)\s+->\s+(\S+?):?\s+:?\s*(.*)$", line)
    name, iri, body = m.group(1), m.group(2), m.group(3)
    toks = []
    pos = 0
    while pos < len(body):
        if body[pos:].strip() == "" or body[pos:].lstrip().startswith("#"):
            break
        t = TOKEN_RE.match(body, pos)
        toks.append(t.group(1))
        pos = t.end()
    items, group = [], None
    for tok in toks:
        if tok == "(":
            continue
        if tok in ("SUBJ:", "OBJ:"):
            group = {"group": tok[:-1], "items": []}
            continue
        if tok == ")":
            items.append(group)
            group = None
            continue
        target = group["items"] if group is not None else items
        if tok in ("?", "*", "+") or tok.startswith("{"):
            lo, hi = {"?": (0, 1), "*": (0, None), "+": (1, None)}.get(tok, (None, None))
            if lo is None:
                parts = tok[1:-1].split(",")
                lo = int(parts[0])
                hi = lo if len(parts) == 1 else (int(parts[1]) if parts[1] else None)
            target[-1]["min"], target[-1]["max"] = lo, hi
            continue
        if tok.startswith('"'):
            atom = ("word", tok[1:-1].replace('\\"', '"'))
        elif tok.startswith("pos:"):
            atom = ("pos", tok[4:])
        elif tok.startswith("class:"):
            atom = ("class", tok[6:])
        else:
            atom = ("any", None)
        target.append({"atom": atom, "min": 1, "max": 1})
    return name, iri, items


def atom_matches(s, atom, t):
    kind, value = atom
    if kind == "word":
        return s["tokens"][t] == value
    if kind == "pos":
        return s["pos"][t] == value
    if kind == "class":
        return any(l["start"] <= t < l["end"] and l.get("class", "") == value for l in s["links"])
    return True


def flatten(items):
    flat = []
    for it in items:
        if "group" in it:
            flat.append(("open", it["group"]))
            flat.extend(flatten(it["items"]))
            flat.append(("close", it["group"]))
        else:
            flat.append(("atom", it))
    return flat


def match_at(s, flat, start):
    n = len(s["tokens"])

    def run(k, t, caps):
        if k == len(flat):
            return t, caps
        kind, it = flat[k]
        if kind == "open":
            return run(k + 1, t, dict(caps, **{it + "_start": t}))
        if kind == "close":
            return run(k + 1, t, dict(caps, **{it + "_end": t}))
        hi = it["max"] if it["max"] is not None else n
        count = 0
        while count < it["min"]:
            if t + count >= n or not atom_matches(s, it["atom"], t + count):
                return None
            count += 1
        reach = count
        while reach < hi and t + reach < n and atom_matches(s, it["atom"], t + reach):
            reach += 1
        for c in range(reach, it["min"] - 1, -1):
            r = run(k + 1, t + c, caps)
            if r is not None:
                return r
        return None

    return run(0, start, {})


def tokpat(s, rules, conf):
    out = []
    for _, iri, items in rules:
        flat = flatten(items)
        start = 0
        n = len(s["tokens"])
        while start < n:
            r = match_at(s, flat, start)
            if r is None:
                start += 1
                continue
            end, caps = r
            subjects = links_with_span(s, (caps["SUBJ_start"], caps["SUBJ_end"]))
            objects = links_with_span(s, (caps["OBJ_start"], caps["OBJ_end"]))
            if not subjects or not objects:
                start += 1
                continue
            emit(out, subjects, ("iri", iri), objects, conf, "tokpat", s["id"])
            start = max(end, start + 1)
    return out


# ---------------------------------------------------------------------------
# Distant supervision and canonicalization.

def ds_instances(corpus, facts):
    out = []
    for s in corpus:
        for i, a in enumerate(s["links"]):
            for j, b in enumerate(s["links"]):
                if i == j or overlap((a["start"], a["end"]), (b["start"], b["end"])):
                    continue
                for f in facts:
                    if f[0] == a["entity"] and f[2] == b["entity"]:
                        out.append((s["id"], f[1], (a["start"], a["end"]), (b["start"], b["end"])))
    return out


def statistics(instances, by_id, stopwords, min_count):
    stops = {norm(w) for w in stopwords}
    stats = {}
    for sid, p, sa, sb in instances:
        s = by_id[sid]
        prof = stats.setdefault(p, {"tokens": defaultdict(int), "verbs": defaultdict(int), "n": 0})
        prof["n"] += 1
        for t, w in enumerate(s["tokens"]):
            if sa[0] <= t < sa[1] or sb[0] <= t < sb[1]:
                continue
            w = norm(w)
            if w and w not in stops:
                prof["tokens"][w] += 1
        for v in compound_phrases(s):
            prof["verbs"][norm(v)] += 1
    for prof in stats.values():
        prof["tokens"] = {k: v for k, v in prof["tokens"].items() if v >= min_count}
    return stats


def scores(s, stats, verb_weight):
    tokens = {norm(w) for w in s["tokens"]}
    verbs = {norm(v) for v in compound_phrases(s)}
    return {p: sum(1 for t in tokens if t in prof["tokens"])
            + verb_weight * sum(1 for v in verbs if v in prof["verbs"])
            for p, prof in stats.items()}


def argmax(sc):
    best = None
    for p in sorted(sc):
        if best is None or sc[p] > sc[best]:
            best = p
    return best


def distant(s, stats, verb_weight, min_score):
    spans = spans_of(s)
    if len(spans) < 2:
        return []
    sc = scores(s, stats, verb_weight)
    best = argmax(sc)
    if best is None or sc[best] < min_score:
        return []
    conf = sc[best] / (sc[best] + 2.0)
    out = []
    for a in spans:
        for b in spans:
            if a != b and not overlap(a, b):
                emit(out, links_with_span(s, a), ("iri", best), links_with_span(s, b), conf,
                     "distant", s["id"])
    return out


def canonicalize(t, s, predicates, mapping, stats, verb_weight, min_score):
    subj, (kind, value), obj, ext, conf, sid = t
    if kind == "iri":
        return t if value in predicates else None
    if norm(value) in mapping:
        return (subj, ("iri", mapping[norm(value)]), obj, ext, conf, sid)
    known = {p: prof for p, prof in stats.items() if p in predicates}
    sc = scores(s, known, verb_weight)
    best = argmax(sc)
    if best is None or sc[best] < min_score:
        return None
    return (subj, ("iri", best), obj, ext, conf * sc[best] / (sc[best] + 1.0), sid)


# ---------------------------------------------------------------------------
# Fusion and evaluation.

def fuse(triples, threshold):
    groups = {}
    for t in triples:
        groups.setdefault((t[0], t[1], t[2]), []).append(t)
    out = {}
    for key, members in groups.items():
        extractors = {m[3] for m in members}
        out[key] = (len(extractors) >= 2 or any(m[4] >= threshold for m in members), members)
    return out


def evaluate(triples, gold):
    row = {"triples": 0, "corrects": 0, "wrongs": 0, "oso": 0}
    recalled = set()
    for subj, (kind, value), obj, _, _, sid in triples:
        g = gold[sid]
        row["triples"] += 1
        if subj != g["subject"] or obj != g["object"]:
            row["oso"] += 1
        elif kind == "iri" and value == g["predicate"]:
            row["corrects"] += 1
            recalled.add(sid)
        else:
            row["wrongs"] += 1
    row["recalled"] = len(recalled)
    return row


def accepted_candidates(fused):
    out = []
    for key, (accepted, members) in fused.items():
        if not accepted:
            continue
        seen = set()
        for m in members:
            if m[5] not in seen:
                seen.add(m[5])
                out.append((key[0], key[1], key[2], "fusion", 0.0, m[5]))
    return out


def main():
    config_path, out_path = sys.argv[1], sys.argv[2]
    base_dir = os.path.dirname(os.path.abspath(config_path))
    with open(config_path) as f:
        config = json.load(f)
    path = lambda key: os.path.join(base_dir, config[key])

    corpus = read_jsonl(path("corpus"))
    gold = {r["id"]: r for r in read_jsonl(path("gold"))}
    kb = path("kb")
    entities = read_jsonl(os.path.join(kb, "entities.jsonl"))
    predicates = set(read_lines(os.path.join(kb, "predicates.txt")))
    facts = [tuple(l.split("\t")) for l in read_lines(os.path.join(kb, "facts.tsv"))]
    mapping = {norm(a): b for a, b in (l.split("\t") for l in read_lines(os.path.join(kb, "mapping.tsv")))}
    stopwords = read_lines(path("stopwords"))
    with open(path("templates")) as f:
        templates = json.load(f)
    bank = read_jsonl(path("patterns"))
    rules = [parse_rule(l) for l in read_lines(path("rules"))]
    conf = config.get("confidences", {})
    dist = config.get("distant", {})
    canon = config.get("canonicalizer", {})

    linked = link(corpus, entities, config.get("max_ngram", 6))
    by_id = {s["id"]: s for s in linked}
    instances = ds_instances(linked, facts)
    stats = statistics(instances, by_id, stopwords, config.get("min_token_count", 2))

    enabled = [e for e in ORDER if e in config["extractors"]]
    extract = {
        "predpatt": predpatt,
        "deppat": lambda s: deppat(s, bank, conf.get("deppat", 1.0)),
        "psie": lambda s: psie(s, conf.get("psie", 0.8)),
        "repersian": lambda s: repersian(s, templates, conf.get("repersian", 0.7)),
        "tokpat": lambda s: tokpat(s, rules, conf.get("tokpat", 0.9)),
        "distant": lambda s: distant(s, stats, dist.get("verb_weight", 2), dist.get("min_score", 2)),
    }
    extracted = {e: [t for s in linked for t in extract[e](s)] for e in enabled}

    canonical = []
    for e in enabled:
        for t in extracted[e]:
            c = canonicalize(t, by_id[t[5]], predicates, mapping, stats,
                             canon.get("verb_weight", 1), canon.get("min_score", 1))
            if c is not None:
                canonical.append(c)
    total = sum(len(v) for v in extracted.values())

    fused = fuse(canonical, config["threshold"])
    summary = {
        "sentences": len(corpus),
        "links": sum(len(s["links"]) for s in linked),
        "ds_instances": len(instances),
        "stats_predicates": len(stats),
        "extracted": {e: len(extracted[e]) for e in enabled},
        "canonicalized": {e: sum(1 for t in canonical if t[3] == e) for e in enabled},
        "dropped": total - len(canonical),
        "fused_groups": len(fused),
        "accepted": sum(1 for a, _ in fused.values() if a),
    }
    evaluation = {}
    for e in enabled:
        mine = [t for t in canonical if t[3] == e]
        if mine:
            evaluation[e] = evaluate(mine, gold)
    evaluation["fusion"] = evaluate(accepted_candidates(fused), gold)
    summary["evaluation"] = evaluation
    if config.get("sweep"):
        summary["sweep_accepted"] = [
            sum(1 for a, _ in fuse(canonical, th).values() if a) for th in config["sweep"]]

    with open(out_path, "w") as f:
        f.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
