#!/usr/bin/env python3
# Copyright 2026 The Authors.
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

"""Writes the small demo corpus, synthetic word vectors, frequencies and
external sentence vectors under data/demo. Output is deterministic."""

import hashlib
import json
import re
import string
from pathlib import Path

import numpy as np

DIM = 16
OUT = Path(__file__).resolve().parent.parent / "data" / "demo"

CLUSTERS = {
    "d001": {
        "documents": [
            "Heavy rain swelled the Marren River on Tuesday, and the water rose above the old stone bridge "
            "by early evening. Officials in the town of Lowfield ordered families near the bank to leave "
            "their homes. About four hundred people spent the night in the school gym, where volunteers "
            "served soup and handed out blankets. The mayor said the flood was the worst in thirty years. "
            "Farmers upstream reported that fields of wheat and barley were under water. Power lines fell "
            "across two roads, and crews worked through the night to restore electricity.",
            "By Wednesday morning the river had crested at nine meters. Engineers inspected the levee south "
            "of Lowfield and found a small breach, which they sealed with sandbags. Soldiers from the regional "
            "base joined the effort and carried sandbags to the weakest sections. Forecasters warned that more "
            "rain could fall over the weekend. The regional governor promised emergency funds for families "
            "who lost their homes and for farmers whose crops were ruined. Schools stayed closed, and the "
            "train line to the capital was suspended.",
            "Residents began returning on Friday as the water slowly went down. Many found mud on their floors "
            "and damaged furniture in their kitchens. Insurance agents set up a tent in the town square to "
            "help people file claims. The mayor thanked the volunteers and soldiers and said the town would "
            "rebuild. Scientists at the national weather office said that storms of this size are becoming "
            "more common in the valley. They urged the government to raise the levee and to improve warning "
            "systems along the river.",
        ],
        "references": [
            "The Marren River flooded Lowfield after heavy rain, forcing four hundred people from their homes. "
            "Soldiers and volunteers sealed a breach in the levee with sandbags. The governor promised "
            "emergency funds for families and farmers. Residents returned on Friday to find mud and damaged "
            "furniture, and scientists urged the government to raise the levee.",
            "Heavy rain caused the worst flood in thirty years in Lowfield. The river crested at nine meters, "
            "fields of wheat were under water and power lines fell. Engineers sealed a levee breach. "
            "Families returned as the water went down, and officials promised funds to rebuild.",
        ],
    },
    "d002": {
        "documents": [
            "A team of engineering students from Harlow University won the national solar car race on Sunday. "
            "Their car, a narrow vehicle covered in black solar panels, finished the three thousand kilometer "
            "course in just under five days. The students built the car over two years in a small workshop "
            "behind the physics building. Their battery pack weighed less than thirty kilograms. The team "
            "leader said the panels produced enough power to drive at ninety kilometers per hour in full sun.",
            "Twenty teams started the race in the northern port city and drove south across the desert. Clouds "
            "on the third day slowed most of the cars, and several teams had to stop and charge their "
            "batteries. The Harlow car kept moving because its motor used very little power at low speed. "
            "A rival team from the technical institute finished second, about four hours behind. Two cars "
            "broke down in the desert and were carried to the finish on trucks.",
            "Sponsors praised the students for their design, and a battery company offered the team leader a "
            "job. The university plans to display the car in the main hall. Organizers said that next year "
            "the race will include a new class for cars with passengers. The students said they hope their "
            "work shows that solar power can be practical for long trips.",
        ],
        "references": [
            "Engineering students from Harlow University won the national solar car race, covering three "
            "thousand kilometers in under five days. Their light car kept moving through clouds because its "
            "motor used little power. A rival team finished second, four hours behind. The university will "
            "display the car.",
            "Harlow University students won the solar car race across the desert. The car, built over two "
            "years, had solar panels and a light battery pack. Clouds slowed most cars but not theirs. "
            "Organizers plan a passenger class for next year.",
        ],
    },
    "d003": {
        "documents": [
            "The central library in Bramford reopened on Monday after a renovation that lasted eighteen "
            "months. The building, which dates from the nineteenth century, now has a glass roof over the "
            "reading room and new shelves for two hundred thousand books. The city council paid for most of "
            "the work, and a local foundation donated money for a children's wing. Hundreds of readers "
            "waited outside before the doors opened at nine.",
            "The children's wing has a small theater where authors will read stories on weekends. Librarians "
            "said that the old building was too dark and too cold, and that many families had stopped "
            "visiting. The new reading room is bright and quiet, with long tables and lamps. Computers for "
            "public use were added on the second floor, along with rooms for study groups. The library will "
            "also lend laptops to students who do not have one at home.",
            "Some residents complained that the renovation cost more than planned. The council said the "
            "final cost was twelve million, about two million more than the first estimate, because workers "
            "found damage in the roof. The head librarian said the building would serve the city for another "
            "century. On the first day, more than three thousand people visited and nearly five hundred "
            "signed up for new library cards.",
        ],
        "references": [
            "Bramford's central library reopened after an eighteen month renovation that added a glass roof, "
            "new shelves and a children's wing. The work cost twelve million, more than planned, because of "
            "roof damage. More than three thousand people visited on the first day.",
            "The nineteenth century library in Bramford reopened with a bright reading room, computers, study "
            "rooms and a children's wing with a theater. The city council paid for most of the renovation. "
            "Nearly five hundred people signed up for library cards on the first day.",
        ],
    },
}

# Coarse topic groups give the synthetic vectors some structure.
TOPICS = {
    "water": "rain river flood water levee sandbags bridge bank crested breach storms weather forecasters mud valley".split(),
    "car": "solar car race panels battery batteries motor power kilometers vehicle desert cars trucks speed drive finish".split(),
    "library": "library books reading shelves librarians librarian readers authors stories theater cards study laptops computers".split(),
    "people": "people families residents volunteers soldiers students team officials mayor governor council children".split(),
    "money": "funds money cost million paid donated sponsors insurance claims estimate company job".split(),
}
STOPWORDS = set(
    "the a an and of in on at to for by with from was were is are be had has have their they it its "
    "that which this as about more most than over after before into out up down who would will said "
    "could can do not one two".split()
)
# Left out of the vector table so OOV handling gets exercised.
OOV = {"marren", "lowfield", "harlow", "bramford"}


def words(text):
    out = []
    for chunk in text.split():
        w = chunk.strip(string.punctuation)
        if w:
            out.append(w.lower())
    return out


def split(text):
    return [s for s in re.split(r"(?<=[.!?])\s+(?=[A-Z])", text.strip()) if s]


def word_rng(word):
    seed = int.from_bytes(hashlib.sha256(word.encode()).digest()[:8], "little")
    return np.random.default_rng(seed)


def main():
    topic_dirs = {}
    for name in sorted(TOPICS):
        topic_dirs[name] = word_rng("topic:" + name).normal(size=DIM)
    common = word_rng("common").normal(size=DIM)
    topic_of = {w: t for t, ws in TOPICS.items() for w in ws}

    corpus_dir = OUT / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    counts = {}
    for cid, cluster in CLUSTERS.items():
        docs = [split(d) for d in cluster["documents"]]
        doc = {"cluster_id": cid, "documents": docs, "references": cluster["references"]}
        (corpus_dir / f"{cid}.json").write_text(json.dumps(doc, indent=2) + "\n")
        for d in cluster["documents"]:
            for w in words(d):
                counts[w] = counts.get(w, 0) + 1

    vocab = sorted(w for w in counts if w not in OOV)
    table = {}
    with open(OUT / "vectors.txt", "w") as f:
        for w in vocab:
            rng = word_rng(w)
            v = rng.normal(size=DIM)
            if w in STOPWORDS:
                v = 0.3 * v + 2.0 * common
            elif w in topic_of:
                v = 0.6 * v + 1.5 * topic_dirs[topic_of[w]]
            v = np.round(v, 6)
            table[w] = v
            f.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")

    # Frequencies from a notional larger corpus: observed counts scaled, with
    # stopwords boosted.
    with open(OUT / "frequencies.tsv", "w") as f:
        for w in sorted(counts):
            c = counts[w] * (500 if w in STOPWORDS else 10)
            f.write(f"{w}\t{c}\n")

    # External sentence vectors for the "paragraph-vectors" function: the mean
    # of the known word vectors plus fixed noise, keyed by sentence id, and one
    # document row per cluster.
    noise = np.random.default_rng(7)

    def para(text):
        known = [table[w] for w in words(text) if w in table]
        return np.mean(known, axis=0) + 0.2 * noise.normal(size=DIM)

    with open(OUT / "paragraph_vectors.tsv", "w") as f:
        for cid, cluster in CLUSTERS.items():
            for d, text in enumerate(cluster["documents"]):
                for i, sent in enumerate(split(text)):
                    f.write(f"{cid}/{d}/{i}\t" + " ".join(f"{x:.6f}" for x in para(sent)) + "\n")
            full = " ".join(cluster["documents"])
            f.write(f"{cid}/doc\t" + " ".join(f"{x:.6f}" for x in para(full)) + "\n")

    config = {
        "corpus_dir": "corpus",
        "word_vectors": "vectors.txt",
        "frequencies": "frequencies.tsv",
        "external_vectors": {"paragraph-vectors": "paragraph_vectors.tsv"},
        "vector_functions": ["sif-average", "arora", "paragraph-vectors"],
        "docvec_strategy": "both",
        "seed": 0,
        "output_dir": "out",
        "threads": 1,
    }
    (OUT / "config.json").write_text(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
    main()
