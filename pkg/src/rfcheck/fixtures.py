"""Small hand-annotated documents used by the tests, the scripts and the
README walkthrough."""

from __future__ import annotations

from .corpus import Document, document, document_from_dict


def john_evening() -> Document:
    """Seven EDUs; pi7 continues the narrative from pi2 across the lobster
    digression, so pi2 stays available while pi3..pi6 are added."""
    return document(
        "john-evening",
        [
            ("pi1", "John had a great evening last night."),
            ("pi2", "He first had a great meal at Michel Sarran."),
            ("pi3", "He ate profiterolles de foie gras,"),
            ("pi4", "which is a specialty of the chef."),
            ("pi5", "He had the lobster,"),
            ("pi6", "which he had been dreaming about for weeks."),
            ("pi7", "He then went out to a several swank bars."),
        ],
        [
            ("Elaboration", "pi1", "pi'"),
            ("Elaboration", "pi2", "pi''"),
            ("Narration", "pi2", "pi7"),
            ("EntityElaboration", "pi3", "pi4"),
            ("Narration", "pi3", "pi5"),
            ("Background", "pi5", "pi6"),
        ],
        [("pi'", ["pi2", "pi7"]), ("pi''", ["pi3", "pi5"])],
    )


def mary_garlic() -> Document:
    return document(
        "mary-garlic",
        [
            ("pi1", "Mary wanted garlic and thyme."),
            ("pi2", "She also needed basil."),
            ("pi3", "The recipe called for them."),
            ("pi4", "The basil would be hard to come by this time of year."),
        ],
        [
            ("Parallel", "pi1", "pi2"),
            ("Explanation", "pi", "pi3"),
            ("EntityElaboration", "pi2", "pi4"),
        ],
        [("pi", ["pi1", "pi2"])],
    )


def bill_sports() -> Document:
    return document(
        "bill-sports",
        [
            ("pi1", "Bill doesn't like sports."),
            ("pi2", "But Sam does."),
            ("pi3", "Or John does."),
        ],
        [("Contrast", "pi1", "pi'"), ("Alternation", "pi2", "pi3")],
        [("pi'", ["pi2", "pi3"])],
    )


def john_yacht(with_followup: bool = True) -> Document:
    """Two appositive EDUs embedded in the matrix clause pi1, linked by
    Continuation but not grouped; pi4 attaches to pi1."""
    text = (
        "John, who owns a chain of restaurants, and is a director of a local "
        "charity organization, wanted to sell his yacht. He couldn't afford it anymore."
    )

    def span(eid: str, fragment: str) -> dict:
        start = text.index(fragment)
        return {"id": eid, "start": start, "end": start + len(fragment), "text": fragment}

    edus = [
        span("pi1", text[: text.index("yacht.") + len("yacht.")]),
        span("pi2", "who owns a chain of restaurants"),
        span("pi3", "and is a director of a local charity organization,"),
    ]
    relations = [
        {"type": "EntityElaboration", "source": "pi1", "target": "pi2"},
        {"type": "Continuation", "source": "pi2", "target": "pi3"},
    ]
    if with_followup:
        edus.append(span("pi4", "He couldn't afford it anymore."))
        relations.append({"type": "Explanation", "source": "pi1", "target": "pi4"})
    return document_from_dict({"id": "john-yacht", "edus": edus, "relations": relations})


_ENUMERATION = [
    ("74", "Around her,"),
    ("75", "we should mention Joseph Racaille"),
    ("76", "responsible for the magnificent arrangements,"),
    ("77", "Christophe Dupouy"),
    ("78", "regular associate of Jean-Louis Murat responsible for mixing,"),
    ("79", "without forgetting her two guardian angels:"),
]


def enumeration(attach_79_to: tuple[str, ...] = ("75", "74")) -> Document:
    """Enumeration left ungrouped by the annotator: 77 continues 75 and 79
    attaches with Elaboration to each label in ``attach_79_to``."""
    relations = [
        ("Comment", "74", "75"),
        ("EntityElaboration", "75", "76"),
        ("Continuation", "75", "77"),
        ("EntityElaboration", "77", "78"),
    ]
    relations += [("Elaboration", p, "79") for p in attach_79_to]
    return document("enumeration-74-79", _ENUMERATION, relations)


def enumeration_grouped() -> Document:
    """The same passage with the enumeration grouped explicitly."""
    return document(
        "enumeration-74-79-grouped",
        _ENUMERATION,
        [
            ("Elaboration", "74", "pi"),
            ("EntityElaboration", "75", "76"),
            ("Continuation", "75", "77"),
            ("EntityElaboration", "77", "78"),
            ("Elaboration", "74", "79"),
        ],
        [("pi", ["75", "77"])],
    )


def all_fixtures() -> list[Document]:
    return [john_evening(), mary_garlic(), bill_sports(), john_yacht(), enumeration()]
