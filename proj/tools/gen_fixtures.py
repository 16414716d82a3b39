#!/usr/bin/env python3
"""Regenerates the bundled synthetic corpus and the annotated normalizer set.

Output is a pure function of the seed, so rerunning leaves the tree unchanged.

    python3 tools/gen_fixtures.py [--out data]
"""

import argparse
import random
import re
from pathlib import Path

SEED = 20131217

SIDES = ["right", "left"]
QUADS = ["upper outer quadrant", "upper inner quadrant", "lower outer quadrant", "lower inner quadrant"]

COMPOSITION = [
    "The breasts are almost entirely fatty.",
    "There are scattered areas of fibroglandular density.",
    "The breasts are heterogeneously dense, which may obscure small masses.",
    "The breasts are extremely dense, which lowers the sensitivity of mammography.",
    "The breast tissue is heterogeneous.",
]

FINDINGS = {
    0: [
        "A possible asymmetry is seen in the {side} breast on the craniocaudal view only.",
        "Additional imaging evaluation with spot compression views is needed.",
        "The finding is partially obscured by overlapping tissue.",
        "An ultrasound is recommended for further evaluation of the {side} breast.",
        "Evaluation is incomplete and a callback for additional views is requested.",
        "A questionable focal asymmetry in the {side} {quad} requires further workup.",
        "The posterior tissue is not fully included on the mediolateral oblique view.",
        "Technical repeat of the {side} breast views is needed.",
        "Comparison with outside prior films would be helpful.",
        "A possible mass at {clock} o'clock needs diagnostic mammography and ultrasound.",
    ],
    1: [
        "There is no dominant mass, suspicious calcification or architectural distortion.",
        "No suspicious findings are identified in either breast.",
        "The skin and nipples are unremarkable.",
        "There is no significant interval change.",
        "Both breasts are symmetric in appearance.",
        "No axillary adenopathy is seen.",
        "The fibroglandular tissue is normal in appearance.",
        "There are no new findings since the prior examination.",
        "Negative mammogram of both breasts.",
        "No mammographic evidence of malignancy is present.",
    ],
    2: [
        "Coarse popcorn-like calcifications are seen in the {side} breast, consistent with a degenerating fibroadenoma.",
        "Vascular calcifications are present bilaterally.",
        "A stable intramammary lymph node is noted in the {side} upper outer quadrant.",
        "Scattered benign-appearing round calcifications are unchanged.",
        "A fat-containing oval mass consistent with an oil cyst is seen.",
        "Postsurgical scar in the {side} breast is stable.",
        "Large rod-like secretory calcifications are present.",
        "Dystrophic calcifications at the lumpectomy site are stable.",
        "Skin calcifications are noted in the {side} breast.",
        "These benign findings are stable over several years.",
    ],
    3: [
        "An oval circumscribed mass measuring {size} cm is seen in the {side} breast at {clock} o'clock.",
        "A focal asymmetry in the {side} {quad} likely represents summation of tissue.",
        "A group of punctate calcifications is noted in the {side} breast.",
        "Short-interval follow-up in six months is recommended.",
        "The mass is probably benign and likely represents a fibroadenoma.",
        "Ultrasound shows a corresponding circumscribed hypoechoic oval mass.",
        "A probably benign finding is seen with no suspicious features.",
        "Follow-up diagnostic mammogram in six months is advised.",
        "The circumscribed mass has not been seen on prior studies.",
        "A small round circumscribed nodule is seen in the {side} {quad}.",
    ],
    4: [
        "An irregular mass with indistinct margins measuring {size} cm is seen in the {side} breast at {clock} o'clock.",
        "Amorphous calcifications in a grouped distribution are present in the {side} {quad}.",
        "Fine pleomorphic calcifications are seen in the {side} breast.",
        "Ultrasound-guided core biopsy is recommended.",
        "Stereotactic biopsy of the calcifications is recommended.",
        "A developing asymmetry in the {side} breast is suspicious.",
        "The mass has microlobulated margins.",
        "A new irregular hypoechoic mass is seen on ultrasound.",
        "Tissue sampling is recommended for this suspicious finding.",
        "The lesion is suspicious for malignancy.",
    ],
    5: [
        "A spiculated irregular mass measuring {size} cm is seen in the {side} breast at {clock} o'clock.",
        "Fine linear branching calcifications in a segmental distribution extend toward the nipple.",
        "There is associated skin thickening and nipple retraction.",
        "Axillary adenopathy is present on the {side}.",
        "Architectural distortion is seen surrounding the mass.",
        "The findings are highly suggestive of malignancy.",
        "Appropriate action should be taken and tissue diagnosis is required.",
        "Spiculated margins and posterior shadowing are noted on ultrasound.",
        "Trabecular thickening involves the {side} breast.",
        "Extensive fine linear calcifications span several centimeters.",
    ],
    6: [
        "The biopsy-proven carcinoma in the {side} breast at {clock} o'clock is again seen.",
        "A biopsy clip marker is present within the known malignancy.",
        "Known biopsy-proven malignancy in the {side} {quad}.",
        "The malignancy measures {size} cm, similar to the prior study.",
        "Surgical excision of the known carcinoma is planned.",
        "Findings are consistent with the known cancer.",
        "The patient is undergoing neoadjuvant chemotherapy for carcinoma.",
        "Post biopsy changes are seen around the clip.",
        "Extent of the known malignancy is evaluated for surgical planning.",
        "The tumor is unchanged in size after treatment.",
    ],
}

IMPRESSION = {
    0: "Incomplete. Additional imaging evaluation is needed.",
    1: "Negative.",
    2: "Benign findings.",
    3: "Probably benign finding. Short-interval follow-up is suggested.",
    4: "Suspicious abnormality. Biopsy should be considered.",
    5: "Highly suggestive of malignancy.",
    6: "Known biopsy-proven malignancy.",
}

HISTORY = [
    "Routine screening.",
    "Annual examination.",
    "Palpable lump reported by the patient.",
    "Family history of breast cancer.",
    "Follow-up of prior finding.",
]


def fill(template, rng):
    return template.format(
        side=rng.choice(SIDES),
        quad=rng.choice(QUADS),
        clock=rng.randint(1, 12),
        size=f"{rng.randint(4, 30) / 10:.1f}",
    )


def report_text(category, findings, rng, impression_category=None):
    age = rng.randint(38, 79)
    shown = category if impression_category is None else impression_category
    return (
        "EXAM: Bilateral digital mammogram.\n"
        f"CLINICAL HISTORY: {age}-year-old woman. {rng.choice(HISTORY)}\n"
        f"COMPARISON: Prior study from {rng.randint(2005, 2012)}.\n"
        "FINDINGS:\n"
        f"{' '.join(findings)}\n"
        "IMPRESSION:\n"
        f"{IMPRESSION[shown]} BI-RADS category {shown}.\n"
    )


def category_findings(category, rng, n):
    pool = FINDINGS[category]
    chosen = rng.sample(range(len(pool)), n)
    return [fill(pool[i], rng) for i in sorted(chosen)]


def write_corpus(out, rng, per_category):
    corpus = out / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)
    rows = ["# id\tfile\tcategory"]
    for category in range(7):
        for i in range(per_category):
            rid = f"c{category}-{i + 1:02d}"
            findings = [rng.choice(COMPOSITION)] + category_findings(category, rng, rng.randint(4, 6))
            if rng.random() < 0.25:
                neighbour = min(6, max(0, category + rng.choice([-1, 1])))
                findings.append(fill(rng.choice(FINDINGS[neighbour]), rng))
            (corpus / f"{rid}.txt").write_text(report_text(category, findings, rng))
            rows.append(f"{rid}\t{rid}.txt\t{category}")
    (corpus / "corpus.tsv").write_text("\n".join(rows) + "\n")


def write_sample_reports(out, rng):
    samples = out / "fixtures" / "reports"
    samples.mkdir(parents=True, exist_ok=True)
    negative = [COMPOSITION[1]] + [fill(t, rng) for t in FINDINGS[1][:6]]
    (samples / "consistent_1.txt").write_text(report_text(1, negative, rng))
    # Findings read as negative while the impression states category 4.
    (samples / "inconsistent_4.txt").write_text(report_text(1, negative, rng, impression_category=4))
    (samples / "unlabeled.txt").write_text(
        "FINDINGS:\n" + " ".join(negative) + "\nIMPRESSION:\nNo acute findings.\n"
    )


# Clean sentences per unsanctioned term; "{t}" marks the term.
TERM_SENTENCES = {
    "density": "A {t} is seen in the {side} breast at {clock} o'clock.",
    "vague density": "A {t} is seen in the {side} breast.",
    "nodule": "A small {t} is seen in the {side} {quad}.",
    "ovoid": "An {t} mass is seen in the {side} breast.",
    "lobulated": "The mass has a {t} contour.",
    "poorly-defined": "The mass has {t} margins.",
    "stellate": "A {t} lesion is seen in the {side} breast.",
    "layering": "There are {t} calcifications on the lateral view.",
    "teacup": "{T} calcifications are present.",
    "tubular": "There are {t} calcifications in the {side} breast.",
    "tram-track": "There are {t} calcifications along a vessel.",
    "predominantly round": "The calcifications are {t} in shape.",
    "casting": "There are {t} calcifications in the {side} breast.",
    "indeterminate": "There are {t} calcifications in the {side} {quad}.",
    "heterogeneous": "The calcifications are {t} in size.",
    "loosely grouped": "There are {t} calcifications in the {side} breast.",
    "ductal": "The calcifications follow a {t} pattern.",
}

CLEAN_COUNTS = {
    "density": 59, "vague density": 0, "nodule": 35, "ovoid": 13, "lobulated": 15, "poorly-defined": 0,
    "stellate": 2, "layering": 3, "teacup": 0, "tubular": 1, "tram-track": 0, "predominantly round": 2,
    "casting": 0, "indeterminate": 3, "heterogeneous": 69, "loosely grouped": 1, "ductal": 3,
}

# Variants a reader still recognizes but exact matching misses.
OBFUSCATED = [
    ("predominantly round", "predominatly round"),
    ("predominantly round", "predominantly\nround"),
    ("heterogeneous", "heterogenous"),
    ("loosely grouped", "loosely-grouped"),
    ("loosely grouped", "loosley grouped"),
    ("loosely grouped", "loosely\ngrouped"),
    ("indeterminate", "indeterminant"),
    ("indeterminate", "in-determinate"),
    ("indeterminate", "indeterminite"),
]

FILLER = [
    "The skin and nipples are unremarkable.",
    "No axillary adenopathy is seen.",
    "Comparison is made with the prior study.",
    "The breasts are almost entirely fatty.",
    "Both breasts are symmetric in appearance.",
    "No architectural distortion is present.",
]


def boundary_spans(text, term):
    pattern = re.compile(r"(?<![A-Za-z0-9\x80-\xff])" + re.escape(term) + r"(?![A-Za-z0-9\x80-\xff])", re.I)
    return [(m.start(), m.end()) for m in pattern.finditer(text)]


def write_normalizer(out, rng, n_reports):
    target = out / "fixtures" / "normalizer"
    target.mkdir(parents=True, exist_ok=True)
    for old in target.glob("*.txt"):
        old.unlink()

    items = []
    for term, count in CLEAN_COUNTS.items():
        items += [(term, term)] * count
    items += OBFUSCATED
    rng.shuffle(items)

    buckets = [[] for _ in range(n_reports)]
    for i, item in enumerate(items):
        buckets[i % n_reports].append(item)

    gold = ["report_id\tstart\tend\tterm"]
    for r, bucket in enumerate(buckets):
        rid = f"n{r + 1:03d}"
        text = "FINDINGS:\n"
        spans = []
        for term, surface in bucket:
            template = TERM_SENTENCES[term]
            sentence = fill(template.replace("{t}", "\0").replace("{T}", "\1"), rng)
            if "\1" in sentence:
                surface = surface[0].upper() + surface[1:]
            marker = "\0" if "\0" in sentence else "\1"
            before, after = sentence.split(marker)
            text += rng.choice(FILLER) + " " + before
            spans.append((len(text.encode()), len(text.encode()) + len(surface.encode()), term, surface == term
                          or surface.lower() == term))
            text += surface + after + " "
        text = text.rstrip() + "\nIMPRESSION:\nSee findings.\n"
        (target / f"{rid}.txt").write_text(text)

        # Independent check: clean spans are exactly the word-bounded
        # occurrences of each term, and nothing else in the text matches.
        for term in CLEAN_COUNTS:
            expected = sorted((s, e) for s, e, t, clean in spans if t == term and clean)
            assert boundary_spans(text, term) == expected, (rid, term)
        for s, e, term, _ in spans:
            gold.append(f"{rid}\t{s}\t{e}\t{term}")
    (target / "gold.tsv").write_text("\n".join(gold) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    parser.add_argument("--per-category", type=int, default=12)
    args = parser.parse_args()
    out = Path(args.out)
    write_corpus(out, random.Random(SEED), args.per_category)
    write_sample_reports(out, random.Random(SEED + 1))
    write_normalizer(out, random.Random(SEED + 2), 60)


if __name__ == "__main__":
    main()
