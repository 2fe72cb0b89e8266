# Copyright 2026 The semproj Authors.
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

"""Freezes reference sentiment outputs for the parity corpus.

Run once against vaderSentiment 3.3.2; the output JSON is checked in and
must not be regenerated with a different reference version.
"""
import json
import sys

import vaderSentiment.vaderSentiment as reference

CORPUS = [
    "VADER is smart, handsome, and funny.",
    "VADER is smart, handsome, and funny!",
    "VADER is very smart, handsome, and funny.",
    "VADER is VERY SMART, handsome, and FUNNY.",
    "VADER is VERY SMART, handsome, and FUNNY!!!",
    "VADER is VERY SMART, uber handsome, and FRIGGIN FUNNY!!!",
    "VADER is not smart, handsome, nor funny.",
    "The book was good.",
    "At least it isn't a horrible book.",
    "The book was only kind of good.",
    "The plot was good, but the characters are uncompelling and the dialog is not great.",
    "Today SUX!",
    "Today only kinda sux! But I'll get by, lol",
    "Make sure you :) or :D today!",
    "Not bad at all",
    "Sentiment analysis has never been good.",
    "Sentiment analysis has never been this good!",
    "Most automated sentiment analysis tools are shit.",
    "With VADER, sentiment analysis is the shit!",
    "Other sentiment analysis tools can be quite bad.",
    "On the other hand, VADER is quite bad ass",
    "VADER is such a badass!",
    "Without a doubt, excellent idea.",
    "Roger Dodger is one of the most compelling variations on this theme.",
    "Roger Dodger is at least compelling as a variation on the theme.",
    "Roger Dodger is one of the least compelling variations on this theme.",
    "Not such a badass after all.",
    "Without a doubt, an excellent idea.",
    "I feel sad and hopeless most days.",
    "I am so tired, nothing makes me happy anymore.",
    "Honestly I feel fine, maybe a little low sometimes.",
    "I have been really anxious and worried about everything.",
    "I am calm and relaxed, no worries at all.",
    "No good days lately.",
    "There is no joy or hope in my life.",
    "I can't stop worrying about work?? What if I fail???",
    "good good good",
    "sad, tired, hopeless",
    "happy, calm, content",
    "feeling low most days Nothing excites me",
    "I'm not happy. I'm not sad either.",
    "It was one of the worst movies I've seen, despite good reviews.",
    "Unbelievably bad acting!! Poor direction. VERY poor production.",
    "I kind of like it but it is sort of boring.",
    "The weather is mild and the bus stop is near.",
    "She was barely pleased with the extremely generous gift.",
    "I never felt so hopeless in my life.",
    "Catch utf-8 emoji such as \U0001F498 and \U0001F48B and \U0001F601",
    "worried nervous tense; cannot relax; constant panic",
    "",
]


def main(path):
    analyzer = reference.SentimentIntensityAnalyzer()
    rounded = [analyzer.polarity_scores(text) for text in CORPUS]
    # Same call with output rounding disabled, for tighter parity checks.
    reference.round = lambda value, digits: value
    full = [analyzer.polarity_scores(text) for text in CORPUS]
    del reference.round
    rows = []
    for text, r, f in zip(CORPUS, rounded, full):
        rows.append({
            "text": text,
            "compound": r["compound"],
            "compound_unrounded": f["compound"],
            "neg": f["neg"],
            "neu": f["neu"],
            "pos": f["pos"],
        })
    with open(path, "w", encoding="utf-8") as out:
        json.dump({"reference": "vaderSentiment 3.3.2", "cases": rows}, out,
                  indent=1, ensure_ascii=False)
        out.write("\n")


if __name__ == "__main__":
    main(sys.argv[1])
