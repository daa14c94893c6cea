"""Writes the shipped medical-assistant fixtures into data/."""
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"
U = [1, 2, 3, 4, 5]
P_U = "0.2"


def z_of(u):
    return 1 if u in (1, 4) else 0


def y_first(d, z, u):
    if d == 0:
        return int(u == 4) if z else int(u in (1, 3, 4))
    return int(u != 2) if z else int(u in (2, 4))


def y_second(d, z, u):
    if d == 0:
        return int(u != 1) if z else int(u in (3, 4))
    return int(u in (1, 4)) if z else int(u in (1, 2))


def model(y_fn):
    y_rules = [
        {"given": {"D": f"d{d}", "Z": z, "U": u}, "value": y_fn(d, z, u)}
        for d in (0, 1) for z in (0, 1) for u in U
    ]
    return {
        "decision": "D",
        "utility": "Y",
        "variables": [
            {"name": "D", "domain": ["d0", "d1"], "parents": [], "exo_parents": []},
            {"name": "Z", "domain": [0, 1], "parents": [], "exo_parents": ["U"]},
            {"name": "Y", "domain": [0, 1], "parents": ["D", "Z"], "exo_parents": ["U"]},
        ],
        "exogenous": [{"name": "U", "domain": U}],
        "exogenous_distribution": [{"assignment": {"U": u}, "p": P_U} for u in U],
        "mechanisms": {
            "D": [{"given": {}, "value": "d0"}],
            "Z": [{"given": {"U": u}, "value": z_of(u)} for u in U],
            "Y": y_rules,
        },
    }


SCOPE = [{"name": "Y", "domain": [0, 1]}, {"name": "Z", "domain": [0, 1]}]


def table(cells):
    return {
        "scope": SCOPE,
        "entries": [{"assignment": {"Y": y, "Z": z}, "p": p} for (y, z), p in sorted(cells.items())],
    }


def fractions(counts):
    return {k: f"{v / 5:.1f}" for k, v in counts.items() if v}


def observed():
    per = {}
    for d in (0, 1):
        counts = {}
        for u in U:
            z = z_of(u)
            key = (y_first(d, z, u), z)
            counts[key] = counts.get(key, 0) + 1
        per[f"d{d}"] = table(fractions(counts))
    return per


def experiment():
    per = {}
    for d in (0, 1):
        ones = sum(y_first(d, 1, u) for u in U)
        per[f"d{d}"] = table(fractions({(1, 1): ones, (0, 1): 5 - ones}))
    return per


def dataset(domains):
    out = {
        "decision": {"name": "D", "domain": ["d0", "d1"]},
        "utility": "Y",
        "per_decision": observed(),
        "skeleton": "Z<-; Y<-D,Z",
        "defaults": {"shift": {"Z": 1}, "context": {"Z": 1}},
    }
    if domains:
        out["domains"] = [{"label": "do(Z=1)", "intervened": {"Z": 1}, "per_decision": experiment()}]
    return out


def uniform_policy_log():
    rows = ["D,Z,Y,weight"]
    for u in U:
        for d in (0, 1):
            z = z_of(u)
            rows.append(f"d{d},{z},{y_first(d, z, u)},1")
    return "\n".join(rows) + "\n"


def write(name, obj):
    (OUT / name).write_text(json.dumps(obj, indent=2) + "\n")


write("medai.scm.json", model(y_first))
write("medai_alt.scm.json", model(y_second))
write("medai.tables.json", dataset(False))
write("medai_experiment.tables.json", dataset(True))
(OUT / "medai_uniform_policy.csv").write_text(uniform_policy_log())
