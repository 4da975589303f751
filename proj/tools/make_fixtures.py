#!/usr/bin/env python3
"""Regenerates the bundled synthetic data under data/.

Everything here is deterministic: the same script version always writes the
same bytes. The generated corpora are synthetic stand-ins built from a small
controlled vocabulary; they are NOT samples of any real community.

    python3 tools/make_fixtures.py [--root .]
"""

import argparse
import csv
import io
import json
import os
import random

# ---------------------------------------------------------------------------
# Vocabulary

MALE_IDENTITY = ["male", "man", "boy", "masculinity", "masculine", "dad", "father", "son"]
FEMALE_IDENTITY = ["female", "woman", "girl", "femininity", "feminine", "mom", "mother", "daughter"]
MALE_PRONOUNS = ["he", "him", "his"]
FEMALE_PRONOUNS = ["she", "her", "hers"]

# Identity nouns usable as sentence subjects, singular -> plural.
MALE_NOUNS = {"man": "men", "boy": "boys", "dad": "dads", "father": "fathers", "son": "sons", "male": "males"}
FEMALE_NOUNS = {"woman": "women", "girl": "girls", "mom": "moms", "mother": "mothers",
                "daughter": "daughters", "female": "females"}

TOXIC_ADJECTIVES = [
    "stupid", "pathetic", "worthless", "disgusting", "ugly", "dumb", "hypergamous", "shallow",
    "manipulative", "entitled", "crazy", "lazy", "vile", "idiotic", "useless", "greedy",
    "selfish", "deceitful", "hysterical", "clingy", "dishonest", "arrogant", "spoiled", "nasty",
    "filthy", "repulsive", "brainless", "hateful", "cruel", "insufferable", "incompetent",
    "promiscuous", "annoying", "bitter", "gross", "miserable", "ignorant", "fake", "petty", "vain",
]

INSULTS = {"idiot": "idiots", "moron": "morons", "loser": "losers", "clown": "clowns",
           "fool": "fools", "creep": "creeps", "jerk": "jerks", "trash": "trash",
           "garbage": "garbage", "scum": "scum"}

NEUTRAL_ADJECTIVES = [
    "nice", "happy", "kind", "smart", "busy", "friendly", "helpful", "quiet", "young", "old",
    "tall", "new", "early", "late", "simple", "easy", "hard", "interesting", "important", "good",
    "great", "big", "small", "long", "warm", "cold", "fresh", "local", "public", "private",
    "healthy", "strong", "calm", "funny", "careful", "honest", "curious", "creative", "patient",
    "polite", "generous", "brave", "gentle", "clever", "proud", "lucky", "fair", "modern",
    "classic", "popular", "famous", "serious", "safe", "cheap", "expensive", "beautiful", "quick",
    "slow", "bright", "dark", "clean", "sunny", "rainy", "hungry", "tired", "excited", "nervous",
    "relaxed", "casual", "cheerful", "thoughtful", "reliable", "practical", "useful", "quick",
    "ordinary", "amazing", "wonderful", "pleasant", "decent", "solid",
]

NEUTRAL_NOUNS = {
    "work": "work", "job": "jobs", "game": "games", "car": "cars", "city": "cities", "food": "food",
    "movie": "movies", "book": "books", "music": "music", "weekend": "weekends", "team": "teams",
    "school": "schools", "office": "offices", "house": "houses", "dog": "dogs", "cat": "cats",
    "park": "parks", "coffee": "coffee", "dinner": "dinners", "lunch": "lunches", "trip": "trips",
    "plan": "plans", "idea": "ideas", "question": "questions", "answer": "answers",
    "problem": "problems", "project": "projects", "class": "classes", "friend": "friends",
    "family": "families", "neighbor": "neighbors", "weather": "weather", "phone": "phones",
    "computer": "computers", "money": "money", "price": "prices", "store": "stores",
    "market": "markets", "street": "streets", "garden": "gardens", "kitchen": "kitchens",
    "room": "rooms", "party": "parties", "holiday": "holidays", "season": "seasons",
    "story": "stories", "news": "news", "show": "shows", "song": "songs", "picture": "pictures",
    "camera": "cameras", "bike": "bikes", "train": "trains", "bus": "buses", "ticket": "tickets",
    "hotel": "hotels", "beach": "beaches", "river": "rivers", "mountain": "mountains",
    "forest": "forests", "restaurant": "restaurants", "recipe": "recipes", "pizza": "pizzas",
    "bread": "bread", "tea": "tea", "shirt": "shirts", "shoe": "shoes", "hobby": "hobbies",
    "sport": "sports", "match": "matches", "player": "players", "coach": "coaches",
    "teacher": "teachers", "student": "students", "doctor": "doctors", "nurse": "nurses",
    "email": "emails", "message": "messages", "schedule": "schedules",
    "budget": "budgets", "report": "reports", "article": "articles", "forum": "forums",
    "thread": "threads", "advice": "advice", "career": "careers", "salary": "salaries",
    "apartment": "apartments", "relationship": "relationships", "library": "libraries",
    "museum": "museums", "concert": "concerts", "vacation": "vacations",
}

# lemma -> (3rd person singular, past, present participle)
VERBS = {
    "like": ("likes", "liked", "liking"), "love": ("loves", "loved", "loving"),
    "enjoy": ("enjoys", "enjoyed", "enjoying"), "think": ("thinks", "thought", "thinking"),
    "go": ("goes", "went", "going"), "say": ("says", "said", "saying"),
    "see": ("sees", "saw", "seeing"), "watch": ("watches", "watched", "watching"),
    "read": ("reads", "read", "reading"), "play": ("plays", "played", "playing"),
    "buy": ("buys", "bought", "buying"), "cook": ("cooks", "cooked", "cooking"),
    "visit": ("visits", "visited", "visiting"), "help": ("helps", "helped", "helping"),
    "make": ("makes", "made", "making"), "take": ("takes", "took", "taking"),
    "find": ("finds", "found", "finding"), "try": ("tries", "tried", "trying"),
    "start": ("starts", "started", "starting"), "finish": ("finishes", "finished", "finishing"),
    "call": ("calls", "called", "calling"), "meet": ("meets", "met", "meeting"),
    "walk": ("walks", "walked", "walking"), "drive": ("drives", "drove", "driving"),
    "share": ("shares", "shared", "sharing"), "learn": ("learns", "learned", "learning"),
    "teach": ("teaches", "taught", "teaching"), "need": ("needs", "needed", "needing"),
    "want": ("wants", "wanted", "wanting"), "know": ("knows", "knew", "knowing"),
    "feel": ("feels", "felt", "feeling"), "remember": ("remembers", "remembered", "remembering"),
    "hate": ("hates", "hated", "hating"), "despise": ("despises", "despised", "despising"),
    "ruin": ("ruins", "ruined", "ruining"), "whine": ("whines", "whined", "whining"),
}
NEUTRAL_VERBS = [v for v in VERBS if v not in ("hate", "despise", "ruin", "whine")]
TOXIC_VERBS = ["hate", "despise", "ruin", "whine"]

EXTRA_IRREGULAR_LEMMAS = {
    "children": "child", "wives": "wife", "husbands": "husband", "guys": "guy",
    "better": "good", "best": "good", "worse": "bad", "worst": "bad",
    "bigger": "big", "biggest": "big", "smaller": "small", "smallest": "small",
    "older": "old", "oldest": "old", "younger": "young", "youngest": "young",
    "happier": "happy", "happiest": "happy", "stupider": "stupid", "dumber": "dumb",
    "uglier": "ugly", "ugliest": "ugly", "lazier": "lazy", "laziest": "lazy",
    "nicer": "nice", "nicest": "nice", "smarter": "smart", "smartest": "smart",
    "masculinities": "masculinity", "femininities": "femininity",
    "got": "get", "gets": "get", "getting": "get", "gotten": "get",
    "came": "come", "comes": "come", "coming": "come",
    "gave": "give", "gives": "give", "given": "give", "giving": "give",
    "told": "tell", "tells": "tell", "telling": "tell",
    "left": "leave", "leaves": "leave", "leaving": "leave",
    "stayed": "stay", "stays": "stay", "staying": "stay",
    "seen": "see", "gone": "go", "taken": "take", "driven": "drive", "known": "know",
    "wrote": "write", "writes": "write", "written": "write", "writing": "write",
    "spoke": "speak", "speaks": "speak", "spoken": "speak", "speaking": "speak",
    "ran": "run", "runs": "run", "running": "run",
    "sat": "sit", "sits": "sit", "sitting": "sit",
    "stood": "stand", "stands": "stand", "standing": "stand",
    "kept": "keep", "keeps": "keep", "keeping": "keep",
    "lost": "lose", "loses": "lose", "losing": "lose",
    "paid": "pay", "pays": "pay", "paying": "pay",
    "sent": "send", "sends": "send", "sending": "send",
    "built": "build", "builds": "build", "building": "build",
    "brought": "bring", "brings": "bring", "bringing": "bring",
    "ate": "eat", "eats": "eat", "eaten": "eat", "eating": "eat",
    "dated": "date", "dates": "date", "dating": "date",
    "partners": "partner", "girlfriends": "girlfriend", "boyfriends": "boyfriend",
    "comments": "comment", "posts": "post", "posted": "post", "posting": "post",
}

# Common adjectives outside the generator vocabulary, so the lexicon is usable
# on ordinary text as well.
COMMON_ADJECTIVES = """
able absent absolute abstract absurd academic acceptable accurate active actual acute adequate
adult afraid aggressive alert alive alone angry anxious apparent appropriate asleep attractive
automatic available average awake aware awful awkward bad bare basic beloved better bitter
blank blind blond bloody blue bold boring brief brilliant broad broken brown busy calm capable
careless central certain charming cheap chemical chief civil clear close comfortable common
complete complex concerned confident confused conscious conservative constant content cool
correct crucial cultural cute daily dangerous dead deaf dear deep delicate delicious
democratic desperate different difficult digital direct dirty distinct domestic double
dramatic dry due eager eastern economic educational effective efficient elderly electric
elegant emotional empty endless enormous equal essential ethical even evil exact excellent
exciting exotic external extra extreme familiar fancy fast fat fatal federal fierce final fine
firm flat flexible flirtatious foolish foreign formal former fortunate free frequent friendly
front frozen full fun fundamental funny general genuine giant glad global golden gorgeous
grand grateful green grey guilty handsome happy harsh heavy helpless hidden high historical
holy homeless honest hopeful horrible hostile hot huge human humble ideal ill illegal
immediate immense imperfect independent individual industrial inevitable innocent intense
internal international invisible jealous joint junior just keen key large last legal lengthy
liberal light likely linear liquid little live lonely loose loud lovely low loyal mad main
major male mature mean medical mental mere mild military minor mixed mobile moderate moral
narrow national native natural naughty near neat necessary negative neutral noble normal
northern novel nuclear numerous obvious odd official okay open opposite optimistic orange
original outer overall painful pale paternalistic peaceful perfect permanent personal
physical pink plain pleasant poor positive possible powerful precious pregnant present
pretty previous primary prime principal prior professional progressive prominent proper
psychological pure purple radical random rapid rare raw ready real realistic reasonable
recent red regular related relevant religious remote responsible rich right rigid romantic
rough round royal rude rural sad satisfied scared secret secure senior sensible sensitive
separate severe sexual sharp sick significant silent silly similar single slim smooth social
soft solid sorry sour southern spare special specific spiritual square stable steady steep
sticky stiff straight strange strict striking stupid subtle successful sudden sufficient
suitable super superb sure surprised suspicious sweet tall technical temporary tender terrible
thick thin tight tiny total tough toxic traditional tragic tremendous tropical true typical
ugly ultimate unable unaware uncomfortable unfair unhappy unique universal unknown unlikely
unusual upper upset urban urgent used usual valid valuable various vast verbal vertical
violent virtual visible visual vital vulnerable weak wealthy weird western wet white whole
wide wild wise wooden working worried wrong yellow young misogynistic misandrist independent
powerful sarcastic sexist
"""


def adjective_lexicon():
    words = set(COMMON_ADJECTIVES.split())
    words.update(TOXIC_ADJECTIVES)
    words.update(NEUTRAL_ADJECTIVES)
    words.update(["male", "female", "masculine", "feminine"])
    for noun in NEUTRAL_NOUNS:
        words.discard(noun)
    words.discard("working")  # verb participle; collides with the lemma table
    return sorted(words)


def lemma_table():
    table = {}
    for singular, plural in list(MALE_NOUNS.items()) + list(FEMALE_NOUNS.items()) + \
            list(NEUTRAL_NOUNS.items()) + list(INSULTS.items()):
        if plural != singular:
            table[plural] = singular
    for lemma, forms in VERBS.items():
        for form in forms:
            if form != lemma:
                table[form] = lemma
    for form, lemma in EXTRA_IRREGULAR_LEMMAS.items():
        table.setdefault(form, lemma)
    # Idempotence: no lemma may itself be a key.
    lemmas = set(table.values())
    for key in sorted(table):
        assert key not in lemmas, key
    return dict(sorted(table.items()))


# ---------------------------------------------------------------------------
# Sentence generation


class Speaker:
    def __init__(self, rng, lean=0.0):
        self.r = rng
        # Chance that a gendered sentence draws its adjective from that
        # gender's half of the neutral adjectives.
        self.lean = lean
        self.topic = None

    def pick(self, seq):
        return self.r.choice(seq)

    def noun(self, plural=False):
        n = self.pick(sorted(NEUTRAL_NOUNS))
        return NEUTRAL_NOUNS[n] if plural else n

    def adj(self):
        if self.lean and self.topic and self.r.random() < self.lean:
            half = sorted(set(NEUTRAL_ADJECTIVES))[0 if self.topic == "m" else 1::2]
            return self.pick(half)
        return self.pick(NEUTRAL_ADJECTIVES)

    def tox(self):
        return self.pick(TOXIC_ADJECTIVES)

    def insult(self, plural=False):
        n = self.pick(sorted(INSULTS))
        return INSULTS[n] if plural else n

    def verb(self, form):
        v = self.pick(NEUTRAL_VERBS)
        return v if form < 0 else VERBS[v][form]

    def gender_subject(self, gender):
        self.topic = gender
        r = self.r.random()
        nouns = MALE_NOUNS if gender == "m" else FEMALE_NOUNS
        pron = "he" if gender == "m" else "she"
        if r < 0.35:
            return pron, False
        noun = self.pick(sorted(nouns))
        if r < 0.7:
            return self.pick(["the", "my", "that", "a"]) + " " + noun, False
        return nouns[noun], True

    def neutral_subject(self):
        return self.pick(["I", "we", "you", "they", "my friend", "our team", "everyone"])

    def any_subject(self, male_share=0.5, gender_share=0.6):
        if self.r.random() < gender_share:
            return self.gender_subject("m" if self.r.random() < male_share else "f")
        s = self.neutral_subject()
        return s, s in ("we", "you", "they")

    def object_pronoun(self, gender):
        return self.pick(["him", "his"] if gender == "m" else ["her", "hers"])

    def neutral_sentence(self, male_share=0.5):
        self.topic = None
        t = self.r.randrange(7)
        subj, plural = self.any_subject(male_share)
        be = "were" if plural else "was"
        g = "m" if self.r.random() < male_share else "f"
        if t == 0:
            s = f"{subj} {self.verb(1)} the {self.adj()} {self.noun()} yesterday."
        elif t == 1:
            s = f"The {self.noun()} was really {self.adj()} and {self.adj()}."
        elif t == 2:
            s = f"{subj} {be} {self.adj()} about the {self.adj()} {self.noun(True)}."
        elif t == 3:
            s = f"Honestly, {subj} {self.verb(1)} a {self.adj()} {self.noun()} with {self.object_pronoun(g)} {self.noun()}."
        elif t == 4:
            s = f"Do you think the {self.noun()} is {self.adj()}?"
        elif t == 5:
            s = f"{subj} said the {self.noun()} was {self.adj()}!"
        else:
            s = f"{subj} {be} {self.verb(2)} some {self.adj()} {self.noun(True)} at the {self.noun()}."
        return s[0].upper() + s[1:]

    def toxic_sentence(self, male_share=0.5):
        t = self.r.randrange(7)
        subj, plural = self.any_subject(male_share, gender_share=0.7)
        be = "are" if plural else "is"
        if t == 0:
            s = f"{subj} {be} such a {self.tox()} {self.insult()}."
        elif t == 1:
            s = f"What a {self.tox()} and {self.tox()} {self.insult()}!"
        elif t == 2:
            s = f"I {self.pick(TOXIC_VERBS)} this {self.tox()} {self.noun()}, it is {self.tox()} {self.insult(True)}."
        elif t == 3:
            s = f"Shut up, you {self.tox()} {self.insult()}."
        elif t == 4:
            s = f"{subj} {be} {self.tox()} and {self.tox()}."
        elif t == 5:
            s = f"{subj} {be} a {self.tox()} {self.insult()} who {self.pick(TOXIC_VERBS)}s everything."
        else:
            s = f"{subj} {be} so {self.tox()}, {self.tox()} {self.insult(True)} honestly."
        return s[0].upper() + s[1:]

    def misogynist_sentence(self):
        t = self.r.randrange(7)
        fem = self.pick(sorted(FEMALE_NOUNS))
        fem_pl = FEMALE_NOUNS[fem]
        if t == 0:
            s = f"{fem_pl} are so {self.tox()} and {self.tox()}."
        elif t == 1:
            s = f"Modern {fem_pl} are {self.tox()} {self.insult(True)}."
        elif t == 2:
            s = f"She is just another {self.tox()} {fem} who {self.verb(1)} the {self.noun()}."
        elif t == 3:
            s = f"Every {fem} I {self.verb(1)} was {self.tox()} and {self.tox()}."
        elif t == 4:
            rel = self.pick(["friend", "boss", "neighbor"])
            s = f"My {rel} says {fem_pl} are {self.tox()}."
        elif t == 5:
            s = f"{fem_pl} are {self.tox()}, {self.tox()} {self.insult(True)} and she knows it."
        else:
            s = f"I {self.pick(TOXIC_VERBS)} how {self.tox()} {fem_pl} are, {self.tox()} and {self.tox()}."
        return s[0].upper() + s[1:]


def comment_text(parts, rng):
    joiner = "\n" if rng.random() < 0.1 else " "
    return joiner.join(parts)


def labeled_corpus(n, seed):
    rng = random.Random(seed)
    sp = Speaker(rng)
    rows = []
    for _ in range(n):
        toxic = rng.random() < 0.23
        if toxic:
            parts = [sp.toxic_sentence()]
            for _ in range(rng.randrange(3)):
                parts.append(sp.toxic_sentence() if rng.random() < 0.5 else sp.neutral_sentence())
        else:
            parts = [sp.neutral_sentence() for _ in range(1 + rng.randrange(3))]
            if rng.random() < 0.05:
                # benign use of a harsh adjective
                parts.append(f"The {sp.noun()} was {sp.tox()} but {sp.adj()}.")
        rng.shuffle(parts)
        label = 1 if toxic else 0
        if rng.random() < 0.03:
            label = 1 - label
        rows.append((comment_text(parts, rng), label))
    return rows


def neutral_comment(sp, rng):
    return comment_text([sp.neutral_sentence() for _ in range(1 + rng.randrange(3))], rng)


def misogynist_comment(sp, rng):
    parts = [sp.misogynist_sentence() for _ in range(1 + rng.randrange(2))]
    for _ in range(rng.randrange(2)):
        parts.append(sp.neutral_sentence())
    rng.shuffle(parts)
    return comment_text(parts, rng)


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for rec in records:
            f.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")


def comment_records(prefix, community, texts, base_time):
    return [{"id": f"{prefix}-{i:05d}", "body": t, "subreddit": community,
             "created_utc": base_time + 37 * i} for i, t in enumerate(texts)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--root", default=os.path.join(os.path.dirname(__file__), ".."))
    args = ap.parse_args()
    root = os.path.abspath(args.root)
    data = os.path.join(root, "data")

    lex = os.path.join(data, "lexicon")
    with open(os.path.join(lex, "adjectives_en.txt"), "w") as f:
        f.write("\n".join(adjective_lexicon()) + "\n")
    with open(os.path.join(lex, "lemmas_en.tsv"), "w") as f:
        for form, lemma in lemma_table().items():
            f.write(f"{form}\t{lemma}\n")

    classes = {
        "male_identity": MALE_IDENTITY, "female_identity": FEMALE_IDENTITY,
        "male_pronouns": MALE_PRONOUNS, "female_pronouns": FEMALE_PRONOUNS,
        "toxic_adjectives": TOXIC_ADJECTIVES, "neutral_adjectives": sorted(set(NEUTRAL_ADJECTIVES)),
        "insults": sorted(INSULTS), "neutral_nouns": sorted(NEUTRAL_NOUNS),
        "neutral_verbs": NEUTRAL_VERBS, "toxic_verbs": TOXIC_VERBS,
    }
    with open(os.path.join(data, "synthetic", "wordclasses.json"), "w") as f:
        json.dump(classes, f, indent=1, sort_keys=True)
        f.write("\n")

    rows = labeled_corpus(20000, seed=20240101)
    buf = io.StringIO(newline="")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["text", "label"])
    w.writerows(rows)
    with open(os.path.join(data, "labeled", "toxicity_20k.csv"), "w", newline="") as f:
        f.write(buf.getvalue())

    rng = random.Random(777)
    sp = Speaker(rng, lean=0.7)
    write_jsonl(os.path.join(data, "pools", "neutral_pool.jsonl"),
                comment_records("np", "neutral_pool", [neutral_comment(sp, rng) for _ in range(6000)],
                                1600000000))
    write_jsonl(os.path.join(data, "pools", "misogyny_pool.jsonl"),
                comment_records("mp", "misogyny_pool", [misogynist_comment(sp, rng) for _ in range(3000)],
                                1600500000))

    rng = random.Random(4242)
    sp = Speaker(rng)
    texts = []
    for i in range(1000):
        texts.append(misogynist_comment(sp, rng) if i % 5 == 0 else neutral_comment(sp, rng))
    recs = comment_records("fx", "fixture", texts, 1650000000)
    write_jsonl(os.path.join(data, "fixtures", "archive_1000.jsonl"), recs)
    with open(os.path.join(data, "fixtures", "archive_1000.manifest"), "w") as f:
        f.write("\n".join(r["id"] for r in recs) + "\n")

    rng = random.Random(9001)
    sp = Speaker(rng, lean=0.7)
    write_jsonl(os.path.join(data, "fixtures", "community_neutral.jsonl"),
                comment_records("cn", "neutral_fixture",
                                [neutral_comment(sp, rng) for _ in range(3000)], 1660000000))
    texts = [misogynist_comment(sp, rng) if rng.random() < 0.3 else neutral_comment(sp, rng)
             for _ in range(3000)]
    write_jsonl(os.path.join(data, "fixtures", "community_planted.jsonl"),
                comment_records("cp", "planted_fixture", texts, 1660500000))


if __name__ == "__main__":
    main()
