BLOCKSET = {
    "name": "blockset-v1",
    "required": {"rank": int, "blocks": list},
    "optional": {"nonneg": bool, "format": str},
}

BLOCK = {
    "name": "block",
    "required": {"base": list, "pattern": list, "indices": dict},
    "optional": {},
}

INDEXSET = {
    "name": "indexset",
    "required": {"period": int},
    "optional": {"hi": dict, "lo": dict, "middle": list},
}

STDFORM = {
    "name": "stdform-v1",
    "required": {"points": list, "intervals": list},
    "optional": {"format": str},
}

FORMULA = {
    "name": "formula-v1",
    "required": {"group": dict, "formula": str},
    "optional": {"params": dict, "format": str},
}

INSTANCE = {
    "name": "inp-instance-v1",
    "required": {"rows": list, "paths": list, "levels": list},
    "optional": {"columns": int, "dense": bool, "format": str},
}

ALL_FORMATS = {
    f["name"]: f
    for f in (BLOCKSET, BLOCK, INDEXSET, STDFORM, FORMULA, INSTANCE)
}
