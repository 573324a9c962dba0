#!/usr/bin/env python3
"""Regenerate the committed fixture corpus.

Everything under fixtures/ is produced here, deterministically, so the
whole corpus can be audited and rebuilt:

  phase 1: knowledge-source fixtures (WordNet excerpt, two vector
           tables, ConceptNet cache), the mini question corpus, the
           answer vocabulary, and the scoring-service contract goldens;
  phase 2: the shipped answer-set artifact built from phase 1 with the
           lexical backend, then a 500-line prediction file and the
           human annotation sample derived from that artifact.

The evaluation golden is NOT produced here; tools/make_golden.py
recomputes it from the shipped files with independent arithmetic.
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import replace
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from aaskit.artifact import write_aas_file  # noqa: E402
from aaskit.builder import (  # noqa: E402
    UNION_VIEW,
    BuildConfig,
    SourcePool,
    artifact_metadata,
    build_vocabulary_aas,
    pool_provenance,
)
from aaskit.conceptnet import ConceptNetClient  # noqa: E402
from aaskit.core import Label  # noqa: E402
from aaskit.dataset import load_gqa_questions  # noqa: E402
from aaskit.entailment import LexicalBackend  # noqa: E402
from aaskit.vectors import load_vectors  # noqa: E402
from aaskit.wordnet import load_wordnet  # noqa: E402

FIX = REPO / "fixtures"

# ---------------------------------------------------------------- wordnet

# (offset, space-separated lemmas, hypernym offsets) -- offsets are
# fixture-local but the emitted line format is faithful WordNet 3.x.
NOUN_SYNSETS = [
    ("10000001", "batter hitter slugger batsman", ["10000002"]),
    ("10000002", "ballplayer baseball_player", ["10000003"]),
    ("10000003", "player participant", ["10000004"]),
    ("10000004", "contestant", []),
    ("10000005", "batter", ["10000006"]),
    ("10000006", "concoction mixture intermixture", ["10000007"]),
    ("10000007", "foodstuff food_product", []),
    ("10000010", "woman adult_female", ["10000011", "10000012"]),
    ("10000011", "adult grownup", ["10000013"]),
    ("10000012", "female female_person", ["10000013"]),
    ("10000013", "person individual someone", []),
    ("10000020", "road route", ["10000021"]),
    ("10000021", "way", ["10000022"]),
    ("10000022", "artifact artefact", []),
    ("10000023", "street", ["10000024"]),
    ("10000024", "thoroughfare", ["10000021"]),
    ("10000030", "teddy teddy_bear", ["10000031"]),
    ("10000031", "plaything toy", ["10000022"]),
    ("10000040", "man adult_male", ["10000011", "10000041"]),
    ("10000041", "male male_person", ["10000013"]),
    ("10000050", "dog domestic_dog", ["10000051"]),
    ("10000051", "canine canid", ["10000052"]),
    ("10000052", "carnivore", []),
    ("10000053", "cat true_cat", ["10000054"]),
    ("10000054", "feline felid", ["10000052"]),
    ("10000060", "car auto automobile machine motorcar", ["10000061"]),
    ("10000061", "motor_vehicle automotive_vehicle", []),
    ("10000070", "chair", ["10000071"]),
    ("10000071", "seat", ["10000072"]),
    ("10000072", "furniture piece_of_furniture", []),
    ("10000073", "table", ["10000072"]),
    ("10000074", "bed", ["10000072"]),
    ("10000080", "tree", ["10000081"]),
    ("10000081", "woody_plant ligneous_plant", ["10000082"]),
    ("10000082", "plant flora", []),
    ("10000083", "grass", ["10000084"]),
    ("10000084", "gramineous_plant graminaceous_plant", ["10000082"]),
    ("10000090", "kitchen", ["10000091"]),
    ("10000091", "room", []),
    ("10000092", "fence fencing", ["10000093"]),
    ("10000093", "barrier", []),
    ("10000094", "highway main_road", ["10000020"]),
    ("10000095", "lady", ["10000010"]),
]

ADJ_SYNSETS = [
    ("20000001", "red crimson scarlet ruby", []),
    ("20000002", "pale pallid", []),
    ("20000003", "white whitish", []),
    ("20000004", "black blackish", []),
    ("20000005", "brown brownish", []),
    ("20000006", "green greenish", []),
    ("20000007", "blue bluish", []),
]

_HEADER = (
    "  1 This is a fixture excerpt in the WordNet 3.x database file format.\n"
    "  2 Regenerated by tools/gen_fixtures.py; do not edit by hand.\n"
)


def write_wordnet() -> None:
    out = FIX / "wordnet"
    out.mkdir(parents=True, exist_ok=True)
    for suffix, pos, synsets in (("noun", "n", NOUN_SYNSETS), ("adj", "a", ADJ_SYNSETS)):
        data_lines = [_HEADER]
        lemma_offsets: dict[str, list[str]] = {}
        for offset, lemma_field, hypernyms in synsets:
            lemmas = lemma_field.split()
            words = " ".join(f"{lemma} 0" for lemma in lemmas)
            pointers = " ".join(f"@ {h} {pos} 0000" for h in hypernyms)
            p_cnt = f"{len(hypernyms):03d}"
            body = f"{offset} 00 {pos} {len(lemmas):02x} {words} {p_cnt}"
            if pointers:
                body += f" {pointers}"
            gloss = f"fixture synset for {lemmas[0].replace('_', ' ')}"
            data_lines.append(f"{body} | {gloss}\n")
            for lemma in lemmas:
                lemma_offsets.setdefault(lemma, []).append(offset)
        index_lines = [_HEADER]
        for lemma in sorted(lemma_offsets):
            offsets = lemma_offsets[lemma]
            n = len(offsets)
            index_lines.append(f"{lemma} {pos} {n} 1 @ {n} 0 {' '.join(offsets)}\n")
        (out / f"data.{suffix}").write_text("".join(data_lines), encoding="utf-8")
        (out / f"index.{suffix}").write_text("".join(index_lines), encoding="utf-8")


# ---------------------------------------------------------------- vectors

DIM = 8

# cluster axis -> ordered members; list position sets the distance rank.
BERT_CLUSTERS = {
    0: ["woman", "women", "lady", "female", "man", "male", "person", "people", "adult_female", "girl"],
    1: ["batter", "hitter", "batsman", "slugger", "ballplayer", "player"],
    2: ["road", "street", "highway", "path", "roadway", "route", "way", "lane"],
    3: ["teddy_bear", "stuffed_animal", "plush_toy", "toy", "doll"],
    4: ["dog", "cat", "puppy", "kitten", "pet", "hound"],
    5: ["chair", "table", "bed", "seat", "couch", "sofa"],
    6: ["tree", "grass", "plant", "bush", "lawn", "flower"],
    7: ["red", "white", "crimson", "scarlet", "pale", "pink"],
}

COUNTERFIT_CLUSTERS = {
    0: ["woman", "lady", "female", "women", "adult_female", "girl", "person", "people", "man", "male"],
    1: ["batter", "batsman", "hitter", "ballplayer", "slugger", "player"],
    2: ["road", "roadway", "street", "route", "highway", "path", "way", "lane"],
    3: ["teddy_bear", "toy_bear", "toy", "doll"],
    4: ["dog", "hound", "puppy", "cat", "kitten", "pet"],
    5: ["chair", "seat", "table", "bed", "couch", "sofa"],
    6: ["tree", "bush", "grass", "lawn", "plant", "flower"],
    7: ["red", "crimson", "scarlet", "white", "pale", "pink"],
}


def _vector(cluster: int, rank: int) -> list[float]:
    vec = [0.0] * DIM
    vec[cluster] = 10.0
    vec[(cluster + 1) % DIM] += 0.2 * rank
    return vec


def write_vectors() -> None:
    out = FIX / "vectors"
    out.mkdir(parents=True, exist_ok=True)
    for name, clusters, header in (
        ("bert_vectors.txt", BERT_CLUSTERS, True),
        ("counterfit_vectors.txt", COUNTERFIT_CLUSTERS, False),
    ):
        lines = []
        for cluster, members in clusters.items():
            for rank, phrase in enumerate(members):
                values = " ".join(f"{v:.4f}" for v in _vector(cluster, rank))
                lines.append(f"{phrase} {values}\n")
        if header:
            lines.insert(0, f"{len(lines)} {DIM}\n")
        (out / name).write_text("".join(lines), encoding="utf-8")


# -------------------------------------------------------------- conceptnet

# label -> (relation, other phrase, weight, query_is_start, language)
CONCEPTNET_EDGES = {
    "batter": [
        ("Synonym", "hitter", 2.0, True, "en"),
        ("IsA", "ballplayer", 1.0, True, "en"),
        ("RelatedTo", "baseball", 3.0, True, "en"),
    ],
    "women": [
        ("FormOf", "woman", 3.46, True, "en"),
        ("Synonym", "female", 1.2, True, "en"),
        ("IsA", "people", 1.0, True, "en"),
        ("Synonym", "femmes", 2.0, True, "fr"),
    ],
    "road": [
        ("Synonym", "street", 2.83, True, "en"),
        ("Synonym", "roadway", 1.5, True, "en"),
        ("IsA", "way", 1.0, True, "en"),
        ("SimilarTo", "path", 0.8, True, "en"),
        ("IsA", "thoroughfare", 1.0, True, "en"),
        ("Antonym", "building", 1.0, True, "en"),
    ],
    "teddy bear": [
        ("IsA", "toy", 1.33, True, "en"),
        ("Synonym", "teddy", 1.0, True, "en"),
    ],
    "woman": [
        ("Synonym", "lady", 2.0, True, "en"),
        ("FormOf", "women", 3.46, False, "en"),
        ("IsA", "adult", 1.0, True, "en"),
    ],
    "man": [
        ("Synonym", "male", 1.5, True, "en"),
        ("IsA", "person", 1.0, True, "en"),
        ("Synonym", "gentleman", 1.0, True, "en"),
    ],
    "dog": [
        ("Synonym", "canine", 2.0, True, "en"),
        ("IsA", "pet", 1.5, True, "en"),
        ("SimilarTo", "puppy", 1.0, True, "en"),
    ],
    "cat": [
        ("Synonym", "feline", 2.0, True, "en"),
        ("IsA", "pet", 1.5, True, "en"),
        ("SimilarTo", "kitten", 1.0, True, "en"),
    ],
    "car": [
        ("Synonym", "automobile", 3.46, True, "en"),
        ("Synonym", "auto", 2.0, True, "en"),
        ("IsA", "vehicle", 1.5, True, "en"),
        ("IsA", "motor vehicle", 1.0, True, "en"),
    ],
    "chair": [("IsA", "seat", 2.0, True, "en"), ("IsA", "furniture", 1.5, True, "en")],
    "table": [("IsA", "furniture", 1.5, True, "en")],
    "bed": [("IsA", "furniture", 1.5, True, "en"), ("Synonym", "cot", 1.0, True, "en")],
    "tree": [("IsA", "plant", 2.0, True, "en"), ("IsA", "woody plant", 1.0, True, "en")],
    "grass": [("IsA", "plant", 1.5, True, "en"), ("Synonym", "lawn", 1.0, True, "en")],
    "red": [
        ("SimilarTo", "crimson", 1.5, True, "en"),
        ("SimilarTo", "scarlet", 1.2, True, "en"),
    ],
    "white": [("SimilarTo", "pale", 1.0, True, "en")],
    "yes": [],
    "no": [],
    "kitchen": [("IsA", "room", 2.0, True, "en")],
    "fence": [
        ("Synonym", "fencing", 1.0, True, "en"),
        ("IsA", "barrier", 1.5, True, "en"),
    ],
}


def _node(phrase: str, lang: str) -> dict:
    term = f"/c/{lang}/{phrase.replace(' ', '_')}"
    return {"@id": term, "term": term, "label": phrase, "language": lang}


def _edge(label: str, rel: str, other: str, weight: float, query_is_start: bool, lang: str) -> dict:
    query_node = _node(label, "en")
    other_node = _node(other, lang)
    start, end = (query_node, other_node) if query_is_start else (other_node, query_node)
    return {
        "@id": f"/a/[/r/{rel}/,{start['term']}/,{end['term']}/]",
        "rel": {"@id": f"/r/{rel}", "label": rel},
        "start": start,
        "end": end,
        "weight": weight,
        "surfaceText": None,
    }


def write_conceptnet_cache() -> None:
    cache_dir = FIX / "conceptnet" / "cache"
    cache_dir.mkdir(parents=True, exist_ok=True)
    client = ConceptNetClient(cache_dir=cache_dir, offline=True)
    for label_str, spec in CONCEPTNET_EDGES.items():
        label = Label.from_raw(label_str)
        payload = {
            "term": f"/c/en/{label.normalized.replace(' ', '_')}",
            "relations": sorted(client.relations),
            "api_version": "5.8",
            "edges": [_edge(label.normalized, *entry) for entry in spec],
        }
        path = client.cache_path(label)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, ensure_ascii=False, sort_keys=True, indent=1)


# ---------------------------------------------------------------- corpus

# Per label: hand-written question templates.  Mentioning a candidate
# word inside a question raises that candidate's overlap score, which is
# how the fixture pins the memberships the suite asserts.
QUESTION_BANKS = {
    "batter": [
        "Who is holding the bat near the plate?",
        "Is the batter wearing a blue helmet today?",
        "Does the batter or the hitter wear gloves?",
        "Is the batter the best hitter on the team?",
        "Does the batter look like a skilled batsman?",
        "Is the batsman next to the batter left handed?",
        "Is the batter standing on the white plate?",
        "Does the batter have a wooden bat?",
        "Is the batter taller than the catcher behind him?",
        "Is the batter swinging at the first pitch?",
        "Does the batter wear the gray uniform?",
        "Is the batter watching the ball closely now?",
    ],
    "women": [
        "Are the women wearing long dresses near the door?",
        "Do the women hold umbrellas over their heads?",
        "Is one woman among the women wearing a hat?",
        "Are the women standing behind the white fence?",
        "Are the women or the female guests seated?",
        "Do the women in the picture look happy?",
        "Are the women walking toward the old kitchen?",
        "Are the women carrying bags on their shoulders?",
    ],
    "road": [
        "Which place is it, a road or a street?",
        "Is the road wider than the street beside it?",
        "Does the road merge with the main street ahead?",
        "Is the road a paved route through the hills?",
        "Is the road or the highway busier right now?",
        "Does the road turn into a narrow path here?",
        "Is the roadway on the road wet from rain?",
        "Is the road empty except for one car?",
        "Does the road have white lines painted on it?",
        "Is the road next to the tall green tree?",
        "Is the road made of dark asphalt or dirt?",
        "Does the road pass the wooden fence on the left?",
        "Is the road curving around the small kitchen garden?",
        "Are there dogs crossing the road right now?",
        "Is the road sign red and white here?",
        "Does the road look freshly paved this morning?",
        "Is the road near the parked blue car?",
        "Is the bus driving down the road slowly?",
        "Does the road lead to the white house?",
        "Is the road blocked by the fallen tree?",
        "Is the road visible behind the tall grass?",
        "Does the road cross the river on a bridge?",
        "Is the road lit by street lamps at night?",
        "Is the man walking his dog along the road?",
        "Is the road on the right side of the image?",
    ],
    "teddy bear": [
        "Is the teddy bear a stuffed animal or a real animal?",
        "Does the child hug the teddy bear like a stuffed animal?",
        "Is the teddy bear sitting on the small bed?",
        "Is the teddy bear a soft toy for children?",
        "Is the brown teddy bear next to the white pillow?",
        "Does the teddy bear have a red ribbon on it?",
        "Is the teddy bear larger than the other toy?",
        "Is the teddy bear lying on the green grass?",
        "Does the teddy bear belong to the little girl?",
        "Is the teddy bear propped against the wooden chair?",
    ],
    "woman": [
        "Is the woman near the kitchen window right now?",
        "Does the woman look like a young lady here?",
        "Is the woman or the lady holding the cup?",
        "Is the woman a tall female in black shoes?",
        "Is the woman next to the female cyclist smiling?",
        "Who is wearing the dress, the woman or the girl?",
        "Is the woman walking her dog on the road?",
        "Does the woman carry a red bag today?",
        "Is the woman sitting on the wooden chair?",
        "Is the woman taller than the man beside her?",
        "Is the woman reading a book under the tree?",
        "Does the woman wear a white coat inside?",
        "Is the woman standing behind the long table?",
        "Is the woman pouring tea in the kitchen?",
        "Does the woman have short brown hair?",
        "Is the woman holding the small teddy bear?",
        "Is the woman waiting near the parked car?",
        "Does the woman point at the white fence?",
        "Is the woman wearing glasses in this picture?",
        "Is the woman watering the green grass now?",
        "Does the woman stand on the quiet road?",
        "Is the woman feeding the small cat treats?",
        "Is the woman opening the kitchen cabinet door?",
        "Does the woman hold an umbrella over the girl?",
        "Is the woman near the red bicycle outside?",
        "Is the woman closer to the camera than the dog?",
        "Does the woman wear a scarf around her neck?",
        "Is the woman painting the old wooden fence?",
        "Is the woman looking at the tall tree?",
        "Does the woman sit beside the round table?",
        "Is the woman buying fruit at the market stall?",
        "Is the woman brushing the brown horse gently?",
        "Does the woman stand between the two chairs?",
        "Is the woman typing on a silver laptop?",
        "Is the woman wearing a red hat outdoors?",
        "Does the woman hold the door for the man?",
        "Is the woman playing with the playful puppy?",
        "Is the woman resting on the striped couch?",
        "Does the woman water the plant by the window?",
        "Is the woman crossing the busy street carefully?",
        "Is the woman taking a photo of the road?",
        "Does the woman wear boots in the grass?",
        "Is the woman cooking pasta in the kitchen?",
        "Is the woman drawing at the wooden table?",
        "Does the woman lean on the metal fence?",
        "Is the woman waving from the white car?",
        "Is the woman listening to music right now?",
        "Does the woman carry the sleeping baby inside?",
        "Is the woman jogging past the green tree?",
        "Is the woman seated closer to the window?",
        "Does the woman tie her shoe on the path?",
        "Is the woman sketching the quiet street scene?",
        "Is the woman petting the calm gray cat?",
        "Does the woman fold towels on the bed?",
        "Is the woman smiling at the small child?",
    ],
    "man": [
        "Is the man near the gate a tall male?",
        "Is the man or the male runner faster here?",
        "Does the man look like a friendly gentleman?",
        "Is the man holding the bat for the batter?",
        "Is the man walking the dog down the road?",
        "Does the man wear a black jacket today?",
        "Is the man sitting on the wooden chair?",
        "Is the man taller than the woman beside him?",
        "Does the man carry a brown leather bag?",
        "Is the man standing in the bright kitchen?",
        "Is the man reading near the white fence?",
        "Does the man water the grass every morning?",
        "Is the man driving the red car slowly?",
        "Is the man leaning against the big tree?",
        "Does the man hold the door politely open?",
        "Is the man wearing white sneakers outside?",
        "Is the man eating lunch at the table?",
        "Does the man have a gray beard now?",
        "Is the man fixing the old wooden bed?",
        "Is the man pointing at the street sign?",
        "Does the man play catch with the dog?",
        "Is the man pushing the cart up the road?",
        "Is the man painting the kitchen wall white?",
        "Does the man feed the small orange cat?",
        "Is the man closer to the camera than the car?",
        "Is the man wearing a red baseball cap?",
        "Does the man stand behind the tall fence?",
        "Is the man resting under the shady tree?",
        "Is the man watching the game from the chair?",
        "Does the man cross the street with the woman?",
    ],
    "dog": [
        "Is the dog chasing the playful puppy outside?",
        "Is the dog a friendly canine or a wild one?",
        "Does the dog look like a small hound?",
        "Is the dog near the fence barking loudly?",
        "Is the dog sleeping on the red chair?",
        "Does the dog run across the green grass?",
        "Is the dog drinking water in the kitchen?",
        "Is the dog sitting beside the white car?",
        "Does the dog follow the man down the road?",
        "Is the dog bigger than the gray cat?",
        "Is the dog lying under the wooden table?",
        "Does the dog have a red collar on?",
        "Is the dog waiting near the front door?",
        "Is the dog playing with the old toy?",
        "Does the dog dig holes near the tree?",
        "Is the dog watching the batter swing?",
        "Is the dog walking beside the tall woman?",
        "Does the dog sleep on the soft bed?",
        "Is the dog jumping over the low fence?",
        "Is the dog eating from the metal bowl?",
        "Does the dog bark at the passing car?",
        "Is the dog resting in the shady grass?",
        "Is the dog smaller than the brown horse?",
        "Does the dog sit when the man whistles?",
        "Is the dog near the woman in the kitchen?",
        "Is the dog catching the yellow ball midair?",
        "Does the dog wag its tail at the girl?",
        "Is the dog crossing the quiet street now?",
        "Is the dog hiding under the long table?",
        "Does the dog chase the cat up the tree?",
        "Is the dog swimming in the cold lake?",
        "Is the dog guarding the wooden gate?",
        "Does the dog carry the stick proudly home?",
        "Is the dog sniffing the red flowers?",
        "Is the dog on the left of the road?",
        "Does the dog lick the small child's hand?",
        "Is the dog wearing a blue bandana today?",
        "Is the dog faster than the white rabbit?",
        "Does the dog nap beside the warm stove?",
        "Is the dog scratching at the kitchen door?",
        "Is the dog pulling the long green leash?",
        "Does the dog greet the mail carrier kindly?",
        "Is the dog rolling in the fresh grass?",
        "Is the dog staring at the tall fence?",
        "Does the dog bring the newspaper every day?",
        "Is the dog panting after the long run?",
        "Is the dog begging at the dinner table?",
        "Does the dog sleep inside the cozy house?",
        "Is the dog older than the small puppy?",
        "Is the dog drinking from the garden hose?",
        "Does the dog watch the birds on the fence?",
        "Is the dog near the red fire hydrant?",
        "Is the dog chewing the rubber bone quietly?",
        "Does the dog jump into the blue car?",
        "Is the dog shaking water off its fur?",
        "Is the dog herding the sheep this morning?",
        "Does the dog know the way home alone?",
        "Is the dog meeting the new kitten gently?",
        "Is the dog inside the fenced yard now?",
        "Does the dog love the squeaky toy most?",
    ],
    "cat": [
        "Is the cat a calm feline or a kitten?",
        "Is the cat chasing the small kitten around?",
        "Does the cat sleep on the warm bed?",
        "Is the cat sitting on the kitchen counter?",
        "Is the cat watching the dog from the fence?",
        "Does the cat play with the string toy?",
        "Is the cat hiding under the wooden chair?",
        "Is the cat drinking milk near the table?",
        "Does the cat climb the tall green tree?",
        "Is the cat smaller than the brown dog?",
        "Is the cat walking along the narrow road?",
        "Does the cat nap in the soft grass?",
        "Is the cat staring at the red bird?",
        "Is the cat near the woman reading quietly?",
        "Does the cat follow the man to the kitchen?",
        "Is the cat licking its white paw now?",
        "Is the cat perched on the car roof?",
        "Does the cat scratch the leg of the table?",
        "Is the cat meowing at the closed door?",
        "Is the cat curled up beside the teddy bear?",
        "Does the cat watch the batter on television?",
        "Is the cat stretching on the sunny bed?",
        "Is the cat black with white socks?",
        "Does the cat sit between the two chairs?",
        "Is the cat pouncing on the feather toy?",
        "Is the cat faster than the gray mouse?",
        "Does the cat sleep more than the puppy?",
        "Is the cat near the pale kitchen wall?",
        "Is the cat looking out the open window?",
        "Does the cat purr when the girl pets it?",
    ],
    "car": [
        "Is the car an old automobile or a new auto?",
        "Is the car parked beside the red automobile?",
        "Does the car block the narrow road ahead?",
        "Is the car faster than the white van?",
        "Is the car parked near the wooden fence?",
        "Does the car have four round headlights?",
        "Is the car waiting at the street corner?",
        "Is the car cleaner than the muddy truck?",
        "Does the car belong to the tall man?",
        "Is the car carrying the big brown dog?",
        "Is the car stopped under the shady tree?",
        "Does the car have a dented rear door?",
        "Is the car driving past the green grass?",
        "Is the car painted red and white?",
        "Does the car honk at the slow bus?",
        "Is the car near the woman with the umbrella?",
        "Is the car older than the silver bike?",
        "Does the car fit inside the small garage?",
        "Is the car turning onto the main road?",
        "Is the car behind the yellow taxi now?",
        "Does the car have snow on its roof?",
        "Is the car longer than the blue truck?",
        "Is the car passing the quiet kitchen window?",
        "Does the car stop for the crossing cat?",
        "Is the car covered by the gray tarp?",
        "Is the car beside the batter's practice field?",
        "Does the car shine under the bright sun?",
        "Is the car close to the metal barrier?",
        "Is the car full of camping gear today?",
        "Does the car leak oil on the road?",
        "Is the car quieter than the old motorcycle?",
        "Is the car facing the white house?",
        "Does the car carry the teddy bear inside?",
        "Is the car near the tall street lamp?",
        "Is the car backing out of the driveway?",
        "Does the car tow the little green trailer?",
        "Is the car slower in the heavy rain?",
        "Is the car next to the crowded bus stop?",
        "Does the car have a cracked front window?",
        "Is the car brighter than the pale wall?",
        "Is the car loaded with fresh groceries?",
        "Does the car park near the grass field?",
        "Is the car beeping at the stray dog?",
        "Is the car visible from the kitchen door?",
        "Does the car belong to the young woman?",
    ],
    "chair": [
        "Is the chair a wooden seat or a stool?",
        "Is the chair pushed under the long table?",
        "Does the chair face the bright window?",
        "Is the chair softer than the old couch?",
        "Is the chair holding the folded white towels?",
        "Does the chair match the kitchen cabinets?",
        "Is the chair next to the small bed?",
        "Is the chair taller than the round stool?",
        "Does the chair have a cushion on it?",
        "Is the chair near the sleeping gray cat?",
        "Is the chair painted red like the door?",
        "Does the chair wobble on the uneven road?",
        "Is the chair behind the standing man?",
        "Is the chair made of dark metal?",
        "Does the chair belong at the dining table?",
    ],
    "table": [
        "Is the table near the kitchen window?",
        "Is the table covered with a white cloth?",
        "Does the table hold the vase of flowers?",
        "Is the table longer than the wooden bench?",
        "Is the table set for four people tonight?",
        "Does the table have carved oak legs?",
        "Is the table between the two red chairs?",
        "Is the table cleaner than the counter?",
        "Does the table wobble when the dog bumps it?",
        "Is the table near the woman writing letters?",
        "Is the table holding the chess board now?",
        "Does the table face the quiet road outside?",
        "Is the table darker than the pale wall?",
        "Is the table big enough for the teddy bear tea party?",
        "Does the table have a glass top surface?",
        "Is the table beside the tall green plant?",
        "Is the table under the hanging brass lamp?",
        "Does the table belong in the dining room?",
    ],
    "bed": [
        "Is the bed near the bedroom window?",
        "Is the bed covered with a striped blanket?",
        "Does the bed hold the sleeping white cat?",
        "Is the bed wider than the narrow cot?",
        "Is the bed made neatly this morning?",
        "Does the bed face the wooden chair?",
        "Is the bed softer than the firm couch?",
        "Is the bed frame made of dark oak?",
        "Does the bed sit beside the low table?",
    ],
    "tree": [
        "Is the tree taller than the white house?",
        "Is the tree a young plant or an old one?",
        "Does the tree shade the quiet road below?",
        "Is the tree behind the wooden fence?",
        "Is the tree losing its red leaves?",
        "Does the tree hide the small brown bird?",
        "Is the tree next to the parked car?",
        "Is the tree older than the hedge bush?",
        "Does the tree lean over the green grass?",
        "Is the tree blooming early this spring?",
        "Is the tree near the kitchen garden?",
        "Does the tree drop acorns on the path?",
        "Is the tree thicker than the lamp post?",
        "Is the tree home to the gray squirrel?",
        "Does the tree block the view of the street?",
        "Is the tree beside the batter's dugout?",
        "Is the tree swaying in the strong wind?",
        "Does the tree shelter the sleeping dog?",
        "Is the tree marked with white paint?",
        "Is the tree reflected in the car window?",
        "Does the tree grow near the old barn?",
        "Is the tree between the road and the fence?",
        "Is the tree taller than the young woman?",
        "Does the tree bear small green apples?",
        "Is the tree close to the picnic table?",
        "Is the tree brighter than the pale sky?",
        "Does the tree stand alone in the field?",
    ],
    "grass": [
        "Is the grass a soft green lawn here?",
        "Is the grass freshly cut near the fence?",
        "Does the grass cover the whole front yard?",
        "Is the grass taller than the garden plant?",
        "Is the grass wet from the morning rain?",
        "Does the grass hide the sleeping gray cat?",
        "Is the grass greener near the tall tree?",
        "Is the grass growing along the quiet road?",
        "Does the grass reach the wooden bench?",
        "Is the grass softer than the gravel path?",
        "Is the grass under the picnic table dry?",
        "Does the grass surround the white house?",
        "Is the grass near the batter's field trimmed?",
        "Is the grass full of small yellow flowers?",
    ],
    "red": [
        "Is the ball red or crimson in this light?",
        "Is the red scarf brighter than the scarlet one?",
        "Does the red door match the brick wall?",
        "Is the red car parked by the fence?",
        "Is the red apple on the kitchen table?",
        "Does the red kite fly above the tree?",
        "Is the red chair next to the window?",
        "Is the red flower taller than the grass?",
        "Does the red truck drive down the road?",
        "Is the red hat on the woman's head?",
        "Is the red book under the small bed?",
        "Does the red sign warn the passing cars?",
        "Is the red ribbon on the teddy bear?",
        "Is the red paint fresh on the barn?",
        "Does the red bird sit on the fence?",
        "Is the red cup near the white plate?",
        "Is the red jacket warmer than the coat?",
        "Does the red light stop the evening traffic?",
        "Is the red balloon stuck in the tree?",
        "Is the red rug inside the warm kitchen?",
        "Does the red pen write darker than blue?",
        "Is the red leash on the playful dog?",
        "Is the red tomato riper than the green one?",
        "Does the red curtain cover the whole window?",
        "Is the red bicycle faster than the scooter?",
        "Is the red boat floating near the dock?",
        "Does the red brick path cross the lawn?",
        "Is the red sweater folded on the chair?",
        "Is the red mailbox beside the gravel road?",
        "Does the red helmet fit the young batter?",
        "Is the red blanket spread on the grass?",
        "Is the red mug next to the black cat?",
        "Does the red rose grow by the gate?",
        "Is the red van behind the white car?",
        "Is the red barn older than the farmhouse?",
    ],
    "white": [
        "Is the wall white or pale gray here?",
        "Is the white cup near the silver spoon?",
        "Does the white fence border the green grass?",
        "Is the white dog bigger than the black cat?",
        "Is the white car parked on the road?",
        "Does the white cloud drift over the tree?",
        "Is the white plate on the kitchen shelf?",
        "Is the white shirt cleaner than the gray one?",
        "Does the white curtain move in the breeze?",
        "Is the white chair facing the small table?",
        "Is the white pillow on the neat bed?",
        "Does the white boat sail past the dock?",
        "Is the white paint fresh on the fence?",
        "Is the white horse faster than the brown one?",
        "Does the white snow cover the quiet street?",
        "Is the white towel hanging by the sink?",
        "Is the white lamp brighter than the candle?",
        "Does the white swan swim in the pond?",
        "Is the white flour spilled on the counter?",
        "Is the white teddy bear on the top shelf?",
        "Does the white van block the narrow road?",
        "Is the white rabbit hiding in the grass?",
        "Is the white door open to the kitchen?",
        "Does the white sign point to the highway?",
        "Is the white sock under the wooden chair?",
        "Is the white mug beside the red kettle?",
        "Does the white gull land on the fence?",
        "Is the white dress longer than the skirt?",
    ],
    "yes": [
        "Is the grass green in this picture?",
        "Does the kitchen window face the garden?",
        "Is the dog sitting near the fence?",
        "Is the car parked on the road?",
        "Does the woman wear a warm coat?",
        "Is the tree taller than the house?",
        "Is the cat sleeping on the chair?",
        "Does the man hold the wooden bat?",
        "Is the bed made this morning?",
        "Is the table set for dinner?",
        "Does the road curve to the left?",
        "Is the chair next to the table?",
        "Is the red apple on the plate?",
        "Does the fence need new paint?",
        "Is the teddy bear on the bed?",
        "Is the white cup full of tea?",
        "Does the tree shade the front porch?",
        "Is the batter ready for the pitch?",
        "Is the grass wet this morning?",
        "Does the dog like the new toy?",
        "Is the woman near the open door?",
        "Is the kitchen light turned on?",
        "Does the cat chase the red dot?",
        "Is the man taller than the boy?",
        "Is the road clear of traffic now?",
        "Does the car have winter tires?",
        "Is the chair comfortable to sit in?",
        "Is the white fence newly painted?",
        "Does the table have four legs?",
        "Is the tree older than the barn?",
    ],
    "no": [
        "Is the kitchen empty right now?",
        "Does the dog bite the mail carrier?",
        "Is the road closed for repairs?",
        "Is the cat afraid of the vacuum?",
        "Does the man wear a green hat?",
        "Is the grass taller than the fence?",
        "Is the car missing a front wheel?",
        "Does the woman carry a heavy box?",
        "Is the bed pushed against the window?",
        "Is the tree blocking the garage door?",
        "Does the chair have a broken leg?",
        "Is the table covered in dust?",
        "Is the teddy bear missing an ear?",
        "Does the fence lean to the right?",
        "Is the white paint peeling badly?",
        "Is the batter out after three strikes?",
        "Does the red light stay on all night?",
        "Is the road flooded after the storm?",
        "Is the dog older than ten years?",
        "Does the cat sleep outside tonight?",
        "Is the woman late for the train?",
        "Is the kitchen sink leaking again?",
        "Does the car need more fuel now?",
        "Is the grass dying in the shade?",
        "Is the man wearing two different shoes?",
    ],
    "kitchen": [
        "Is the kitchen a bright room or a dark one?",
        "Is the kitchen bigger than the dining room?",
        "Does the kitchen smell like fresh bread?",
        "Is the kitchen window above the sink?",
        "Is the kitchen floor made of white tile?",
        "Does the kitchen door open to the garden?",
        "Is the kitchen table set for breakfast?",
        "Is the kitchen cleaner than the garage?",
        "Does the kitchen have a gas stove?",
        "Is the kitchen wall painted pale yellow?",
        "Is the kitchen near the front door?",
    ],
    "fence": [
        "Is the fence a wooden barrier or a hedge?",
        "Is the fence around the yard called fencing?",
        "Does the fence keep the dog inside?",
        "Is the fence taller than the rose bush?",
        "Is the fence painted white this year?",
        "Does the fence run along the quiet road?",
        "Is the fence behind the parked car?",
        "Is the fence older than the house?",
        "Does the fence block the neighbor's view?",
        "Is the fence near the tall green tree?",
        "Is the fence casting a shadow on the grass?",
        "Does the fence have a squeaky gate?",
        "Is the fence leaning after the storm?",
    ],
}

LABEL_ORDER = list(QUESTION_BANKS)


def write_questions() -> None:
    out = FIX / "gqa"
    out.mkdir(parents=True, exist_ok=True)
    data = {}
    i = 0
    for label in LABEL_ORDER:
        for text in QUESTION_BANKS[label]:
            data[f"q{i:04d}"] = {
                "question": text,
                "answer": label,
                "imageId": f"img{i % 97:04d}",
            }
            i += 1
    with open(out / "questions.json", "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=1, sort_keys=True)
        f.write("\n")


VOCAB = [
    *LABEL_ORDER,
    "street", "roadway", "route", "highway", "path", "way",
    "hitter", "batsman", "ballplayer", "player", "slugger",
    "lady", "female", "adult female", "person", "girl",
    "male", "gentleman",
    "puppy", "canine", "hound", "pet",
    "kitten", "feline",
    "automobile", "auto",
    "seat", "furniture", "couch", "cot",
    "plant", "lawn", "bush",
    "crimson", "scarlet", "pale",
    "toy", "teddy", "stuffed animal",
    "room",
    "fencing", "barrier",
]


def write_vocab() -> None:
    out = FIX / "vocab"
    out.mkdir(parents=True, exist_ok=True)
    (out / "answers.txt").write_text("".join(f"{a}\n" for a in VOCAB), encoding="utf-8")


# --------------------------------------------------------------- contract

CONTRACT_PAIRS = [
    ("who is holding the bat?", "who is holding the bat?"),
    ("who is holding the bat?", "who is holding the banana?"),
    ("the road is wide", "the street is wide and long"),
]


def write_contract_fixtures() -> None:
    out = FIX / "entailment_contract"
    out.mkdir(parents=True, exist_ok=True)
    backend = LexicalBackend()
    request_1 = {"pairs": [{"premise": p, "hypothesis": h} for p, h in CONTRACT_PAIRS]}
    response_1 = {"scores": backend.score_batch(CONTRACT_PAIRS)}
    request_2 = {"pairs": []}
    response_2 = {"scores": []}
    for name, payload in (
        ("score_request_01.json", request_1),
        ("score_response_01.json", response_1),
        ("score_request_02.json", request_2),
        ("score_response_02.json", response_2),
    ):
        with open(out / name, "w", encoding="utf-8") as f:
            json.dump(payload, f, ensure_ascii=False, indent=1)
            f.write("\n")


# ---------------------------------------------------------------- phase 2

REQUIRED_MEMBERS = {
    "batter": {"batsman", "hitter"},
    "road": {"street"},
    "women": {"woman"},
}

JUNK_PREDICTIONS = ["xyzzy", "argle", "?!", "blorp", "qwup"]


def build_artifact() -> None:
    config = BuildConfig(k=10, sources=("wordnet", "conceptnet", "bert-vec", "counterfit-vec"))
    pool = SourcePool(
        wordnet=load_wordnet(FIX / "wordnet"),
        bert_vectors=load_vectors(FIX / "vectors" / "bert_vectors.txt", "bert-vec"),
        counterfit_vectors=load_vectors(
            FIX / "vectors" / "counterfit_vectors.txt", "counterfit-vec"
        ),
        conceptnet=ConceptNetClient(cache_dir=FIX / "conceptnet" / "cache", offline=True),
    )
    config = replace(config, metadata=pool_provenance(pool, config))
    items = load_gqa_questions(FIX / "gqa" / "questions.json")
    views = build_vocabulary_aas(items, pool, config, LexicalBackend(), backend_name="lexical")
    by_label = {s.label.normalized: s for s in views[UNION_VIEW]}
    for label, required in REQUIRED_MEMBERS.items():
        missing = required - {m.phrase for m in by_label[label].members}
        if missing:
            raise SystemExit(f"fixture corpus does not yield {missing} for {label!r}; retune")
    out = FIX / "aas"
    out.mkdir(parents=True, exist_ok=True)
    write_aas_file(
        views[UNION_VIEW],
        out / "su_aas_k10.jsonl",
        meta=artifact_metadata(config, UNION_VIEW, "lexical"),
    )
    per_source = out / "per_source"
    per_source.mkdir(exist_ok=True)
    for tag in config.sources:
        write_aas_file(
            views[tag], per_source / f"{tag}.jsonl", meta=artifact_metadata(config, tag, "lexical")
        )


def write_predictions() -> None:
    from aaskit.artifact import read_aas_file

    sets, _ = read_aas_file(FIX / "aas" / "su_aas_k10.jsonl")
    by_label = {s.label.normalized: s for s in sets}
    items = load_gqa_questions(FIX / "gqa" / "questions.json")
    rng = random.Random(20210527)
    out = FIX / "predictions"
    out.mkdir(parents=True, exist_ok=True)
    lines = []
    labels = sorted(by_label)
    for item in items:
        gt = item.ground_truth.normalized
        roll = rng.random()
        if roll < 0.55:
            answer = gt
            if rng.random() < 0.3:
                answer = f"  {answer.title()} "
        elif roll < 0.80:
            alternatives = by_label[gt].alternatives()
            if alternatives:
                answer = alternatives[rng.randrange(len(alternatives))]
            else:
                answer = gt
        elif roll < 0.95:
            answer = labels[rng.randrange(len(labels))]
        else:
            answer = JUNK_PREDICTIONS[rng.randrange(len(JUNK_PREDICTIONS))]
        lines.append(json.dumps({"question_id": item.question_id, "answer": answer}))
    (out / "model_a.jsonl").write_text("".join(f"{l}\n" for l in lines), encoding="utf-8")


HUMAN_LABELS = ["road", "batter", "woman", "dog", "red"]
EXTRA_HUMAN_PHRASES = {
    "road": "boulevard",
    "batter": "cricketer",
    "woman": "gal",
    "dog": "mutt",
    "red": "cherry",
}
VOTE_CYCLE = [
    [True, True, True],
    [True, True, False],
    [True, False, False],
    [False, False, False],
    [False, True, True],
]


def write_human_annotations() -> None:
    from aaskit.artifact import read_aas_file

    sets, _ = read_aas_file(FIX / "aas" / "su_aas_k10.jsonl")
    by_label = {s.label.normalized: s for s in sets}
    out = FIX / "human"
    out.mkdir(parents=True, exist_ok=True)
    lines = []
    for label in HUMAN_LABELS:
        alternatives = by_label[label].alternatives()[:6]
        for i, phrase in enumerate(alternatives):
            lines.append(
                json.dumps(
                    {"label": label, "phrase": phrase, "votes": VOTE_CYCLE[i % len(VOTE_CYCLE)]}
                )
            )
        lines.append(
            json.dumps(
                {"label": label, "phrase": EXTRA_HUMAN_PHRASES[label], "votes": [True, True, True]}
            )
        )
    (out / "annotations.jsonl").write_text("".join(f"{l}\n" for l in lines), encoding="utf-8")


def main() -> None:
    write_wordnet()
    write_vectors()
    write_conceptnet_cache()
    write_questions()
    write_vocab()
    write_contract_fixtures()
    build_artifact()
    write_predictions()
    write_human_annotations()
    print("fixtures regenerated under", FIX)


if __name__ == "__main__":
    main()
