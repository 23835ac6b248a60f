import json

from ._core import *  # noqa: F401,F403
from ._core import analyze_json


def analyze(presentation):
    return json.loads(analyze_json(presentation))
