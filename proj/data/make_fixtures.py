#!/usr/bin/env python3
# Copyright 2026 The Concierge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http:#www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the canonical fixture files in this directory.

Every file is written in canonical form (sorted keys, compact separators),
so loading and re-serializing it with the C++ loaders reproduces it byte for
byte. The learned model is not written here; build it with
`concierge train --corpus data/intents_train.jsonl --out data/learned_model.json`.
"""

import json
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def header(fmt, **extra):
    return dumps(dict(format=fmt, version=1, **extra))


def write(name, lines):
    (HERE / name).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def gazetteer():
    rows = [
        ("france", "France", "country", ["france"], "FR", 1.0, None),
        ("netherlands", "Netherlands", "country", ["netherlands", "holland", "the netherlands"], "NL", 1.0, None),
        ("united-kingdom", "United Kingdom", "country", ["united kingdom", "uk", "england"], "GB", 1.0, None),
        ("paris-fr", "Paris", "city", ["paris"], "FR", 0.9, "france"),
        ("paris-us-tx", "Paris, Texas", "city", ["paris", "paris texas"], "US", 0.02, None),
        ("amsterdam-nl", "Amsterdam", "city", ["amsterdam"], "NL", 0.95, "netherlands"),
        ("amsterdam-us-ny", "Amsterdam, New York", "city", ["amsterdam"], "US", 0.05, None),
        ("amsterdam-za", "Amsterdam, Mpumalanga", "city", ["amsterdam"], "ZA", 0.01, None),
        ("london-gb", "London", "city", ["london"], "GB", 0.9, "united-kingdom"),
        ("london-ca-on", "London, Ontario", "city", ["london", "london ontario"], "CA", 0.05, None),
        ("new-york-us", "New York City", "city", ["new york", "new york city", "nyc"], "US", 0.9, None),
        ("york-gb", "York", "city", ["york"], "GB", 0.3, "united-kingdom"),
        ("berlin-de", "Berlin", "city", ["berlin"], "DE", 0.9, None),
        ("rome-it", "Rome", "city", ["rome"], "IT", 0.9, None),
        ("barcelona-es", "Barcelona", "city", ["barcelona"], "ES", 0.9, None),
        ("tel-aviv-il", "Tel Aviv", "city", ["tel aviv", "tel aviv-yafo"], "IL", 0.8, None),
        ("tuscany-it", "Tuscany", "region", ["tuscany"], "IT", 0.6, None),
        ("hotel-krasnapolsky", "Grand Hotel Krasnapolsky", "hotel", ["krasnapolsky", "hotel krasnapolsky"], "NL", 0.2, "amsterdam-nl"),
    ]
    lines = [header("concierge.gazetteer")]
    for id_, name, kind, aliases, country, prior, parent in rows:
        rec = dict(id=id_, name=name, kind=kind, aliases=aliases, country=country, prior=prior)
        if parent:
            rec["parent"] = parent
        lines.append(dumps(rec))
    write("gazetteer.jsonl", lines)


def lexicon():
    pairs = {
        "ik": "i", "wil": "want", "een": "a", "hotel": "hotel", "in": "in",
        "parijs": "paris", "vlucht": "flight", "van": "from", "naar": "to",
        "londen": "london", "annuleren": "cancel", "mijn": "my",
        "boeking": "booking", "kamer": "room", "betaling": "payment",
        "hallo": "hello", "wijzigen": "change", "medewerker": "agent",
        "boeken": "book", "overnachten": "stay", "rome": "rome",
    }
    lines = [header("concierge.lexicon", language="nl")]
    for src in sorted(pairs):
        lines.append(dumps(dict(src=src, dst=pairs[src])))
    write("lexicon_nl.jsonl", lines)


def keywords():
    lines = [header("concierge.keywords")]
    lines += [
        "credit\tpayments",
        "coronavirus\tcovid_info",
        "covid\tcovid_info",
        "invoice\tpayments",
        "speak to someone\trequest_human_agent",
        "receipt\tpayments",
    ]
    write("keywords.tsv", lines)


def confusion():
    lines = [header("concierge.confusion", hint_damping=0.9, insertion_rate=0.01)]
    lines += [
        "booking\tbook:0.3,looking:0.15,<del>:0.02",
        "cancellation\tconsolation:0.25,cancel:0.1",
        "confirmation\tinformation:0.2",
        "reservation\tregistration:0.2",
    ]
    write("confusion.tsv", lines)


def hints():
    write("hints.txt", [header("concierge.hints"), "booking", "cancellation", "reservation"])


def replay():
    rows = [
        dict(id="u1", ref="i need to book a hotel in paris",
             hyp_by_backend=dict(kaldi="i need to book a hotel in paris", tpv="i need to look a hotel in paris")),
        dict(id="u2", ref="cancel my booking"),
        dict(id="u3", ref="contact hotel for reservation details",
             hyp_by_backend=dict(tpv="contact hotel for registration details")),
        dict(id="u4", ref="can i have the confirmation",
             hyp_by_backend=dict(tpv="can i have the information")),
    ]
    write("replay.jsonl", [header("concierge.replay")] + [dumps(r) for r in sorted(rows, key=lambda r: r["id"])])


def table2_pairs():
    write("table2_pairs.jsonl", [
        header("concierge.transcripts"),
        dumps(dict(id="t2-1", ref="contact hotel for reservation details", hyp="contact hotel for registration details")),
    ])


def table1_pairs():
    """415 'booking' references with 31 errors; 108 'cancellation' with 23."""
    lines = [header("concierge.transcripts")]
    booking_refs = [
        "show me my booking",
        "where is my booking confirmation",
        "i want to change my booking",
        "cancel my booking please",
        "is my booking paid",
    ]
    n = 0

    def add(ref, hyp):
        nonlocal n
        n += 1
        lines.append(dumps(dict(id=f"t1-{n:04d}", ref=ref, hyp=hyp)))

    for i in range(415):
        ref = booking_refs[i % len(booking_refs)]
        if i < 25:
            hyp = ref.replace("booking", "looking")
        elif i < 31:
            hyp = " ".join(ref.replace("booking", "").split())
        else:
            hyp = ref
        add(ref, hyp)
    cancellation_refs = [
        "what is the cancellation policy",
        "free cancellation until friday",
        "i need a cancellation form",
    ]
    for i in range(108):
        ref = cancellation_refs[i % len(cancellation_refs)]
        if i < 20:
            hyp = ref.replace("cancellation", "consolation")
        elif i < 23:
            hyp = " ".join(ref.replace("cancellation", "").split())
        else:
            hyp = ref
        add(ref, hyp)
    write("table1_pairs.jsonl", lines)


TEMPLATES = {
    "pre_book": ["i need a hotel in {city}", "book a flight to {city}", "find me a room in {city}",
                 "looking for an apartment in {city}", "cheap flights from {city}"],
    "request_human_agent": ["i want to talk to an agent", "let me speak to a human", "get me a representative"],
    "check_booking_status": ["what is the status of my booking", "where is my confirmation", "is my reservation confirmed"],
    "payments": ["i was charged twice", "how do i pay", "when do i get my refund"],
    "change_booking": ["change my booking dates", "i need to modify my reservation", "amend the booking"],
    "cancel_booking": ["cancel my booking", "i want a cancellation", "please cancel the reservation"],
    "other_post_book": ["is breakfast included", "can i bring my dog", "what time is check in"],
    "greeting": ["hello", "hi there", "hey"],
    "unintelligible": ["uh", "mm hmm", "the the", "banana phone"],
}
CITIES = ["paris", "london", "amsterdam", "rome", "berlin", "barcelona"]


def labeled(label, i, rng):
    template = TEMPLATES[label][i % len(TEMPLATES[label])]
    return template.format(city=rng.choice(CITIES))


def table3_labels():
    counts = [("pre_book", 669), ("request_human_agent", 87), ("check_booking_status", 71),
              ("payments", 30), ("change_booking", 19), ("other_post_book", 100), ("greeting", 24)]
    rng = random.Random(3)
    rows = []
    for label, count in counts:
        rows += [(label, i) for i in range(count)]
    rows += [("unintelligible", i) for i in range(667)]
    rng.shuffle(rows)
    lines = [header("concierge.intents")]
    for k, (label, i) in enumerate(rows):
        lines.append(dumps(dict(id=f"t3-{k:04d}", text=labeled(label, i, rng), intent=label)))
    write("table3_labels.jsonl", lines)


def intents_train():
    rng = random.Random(11)
    lines = [header("concierge.intents")]
    k = 0
    for label, templates in TEMPLATES.items():
        for i in range(3 * len(templates)):
            k += 1
            lines.append(dumps(dict(id=f"train-{k:04d}", text=labeled(label, i, rng), intent=label)))
    write("intents_train.jsonl", lines)


def config():
    body = {
        "backends": {"vtt": "replay", "translation": "lexicon", "ner": "gazetteer", "intent": "composite"},
        "files": {
            "gazetteer": "gazetteer.jsonl",
            "lexicons": {"nl": "lexicon_nl.jsonl"},
            "keywords": "keywords.tsv",
            "confusion": "confusion.tsv",
            "hints": "hints.txt",
            "replay": "replay.jsonl",
            "learned_model": "learned_model.json",
        },
        "default_language": "en",
        "seed": 20210601,
        "replay_backend_name": "tpv",
        "experiment_salt": "intent-arm-v1",
        "port": 8080,
    }
    text = header("concierge.config") + "\n" + json.dumps(body, indent=2, sort_keys=True) + "\n"
    (HERE / "config.json").write_text(text, encoding="utf-8")


if __name__ == "__main__":
    gazetteer()
    lexicon()
    keywords()
    confusion()
    hints()
    replay()
    table1_pairs()
    table2_pairs()
    table3_labels()
    intents_train()
    config()
