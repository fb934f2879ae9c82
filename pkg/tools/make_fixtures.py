#!/usr/bin/env python3
"""Author the bundled 40-document fixture corpus (20 slides, 20 UIs).

Writes src/structsynth/fixtures/descriptions.jsonl and markup/<id>.html.
Rows are emitted in ideation-schedule order so the stub client's prompt
digests line up with what `ideate` asks for. Two fixtures (ui-0019,
slide-0019) intentionally describe unrelated content so the alignment
filter has something to drop.

Run from the repo root:  python3 tools/make_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from structsynth.schema import Domain  # noqa: E402
from structsynth.synth import _schedule  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "src" / "structsynth" / "fixtures"

HEAD = '<meta content="{screen}" name="screentype">'


def ui_doc(screen: str, body: str, css: str = "") -> str:
    style = f"\n<style>{css}</style>" if css else ""
    return (f"<html>\n<head>\n{HEAD.format(screen=screen)}{style}\n</head>\n"
            f"<body style=\"background-color:#fafafa\">\n{body}\n</body>\n</html>\n")


def slide_doc(screen: str, body: str, bg: str = "#ffffff") -> str:
    return (f"<html>\n<head>\n{HEAD.format(screen=screen)}\n</head>\n"
            f"<body style=\"background-color:{bg}\">\n{body}\n</body>\n</html>\n")


def img(alt: str, w: int, h: int, cls: str = "image") -> str:
    return (f'<img src="placeholder" alt="{alt}" width="{w}" height="{h}" '
            f'data-type="{cls}">')


# ---------------------------------------------------------------- UI templates


def ui_login(app: str, tagline: str, logo_alt: str) -> str:
    return f"""
<div style="padding:24px">
  {img(logo_alt, 96, 96)}
  <h1 data-type="text" style="margin-top:16px">{app}</h1>
  <p data-type="text" style="font-size:16px;color:#555555">{tagline}</p>
  <div style="margin-top:24px">
    <p data-type="text">Email address</p>
    <input data-type="input field" style="width:100%;height:48px;margin-bottom:12px">
    <p data-type="text">Password</p>
    <input data-type="input field" style="width:100%;height:48px">
  </div>
  <button data-type="text button" style="width:100%;height:52px;margin-top:24px;background-color:#2255cc;color:#ffffff">Sign in</button>
  <button data-type="text button" style="width:100%;height:48px;margin-top:8px">Create account</button>
  <p data-type="text" style="margin-top:16px;font-size:14px;color:#777777">Forgot password</p>
</div>"""


def ui_list(title: str, rows: list[tuple[str, str]]) -> str:
    items = "\n".join(
        f'  <li style="display:flex;gap:12px;padding:14px;background-color:#ffffff;'
        f'margin-bottom:8px">{img(icon, 44, 44, "icon")}'
        f'<p data-type="text">{label}</p></li>'
        for label, icon in rows)
    return f"""
<div data-type="upper taskbar" style="height:32px;background-color:#222222"></div>
<div style="padding:16px">
  <h2 data-type="text">{title}</h2>
  <ul style="margin-top:12px">
{items}
  </ul>
</div>"""


def ui_settings(title: str, rows: list[str]) -> str:
    items = "\n".join(
        f'  <div style="display:flex;justify-content:space-between;padding:16px;'
        f'background-color:#ffffff;margin-bottom:6px">'
        f'<p data-type="text">{label}</p>'
        f'<div data-type="switch" style="width:52px;height:30px;'
        f'background-color:#44bb66"></div></div>'
        for label in rows)
    return f"""
<div style="padding:16px">
  <h2 data-type="text">{title}</h2>
{items}
  <p data-type="text" style="margin-top:16px;font-size:14px;color:#888888">Changes are saved automatically</p>
</div>"""


def ui_menu(app: str, entries: list[tuple[str, str]]) -> str:
    items = "\n".join(
        f'  <div style="display:flex;gap:12px;padding:14px">'
        f'{img(icon, 44, 44, "icon")}<p data-type="text">{label}</p></div>'
        for label, icon in entries)
    return f"""
<div data-type="background image" style="position:absolute;left:0px;top:0px;width:628px;height:1118px;background-image:url(backdrop.png)"></div>
<div data-type="sliding menu" style="position:absolute;left:0px;top:0px;width:420px;height:1118px;background-color:#ffffff">
  <h2 data-type="text" style="padding:16px">{app}</h2>
{items}
</div>"""


def ui_media_player(track: str, artist: str, art_alt: str) -> str:
    return f"""
<div style="padding:24px">
  {img(art_alt, 360, 360)}
  <h2 data-type="text" style="margin-top:20px">{track}</h2>
  <p data-type="text" style="color:#666666">{artist}</p>
  <div style="height:6px;background-color:#dddddd;margin-top:20px">
    <div style="width:40%;height:6px;background-color:#2255cc"></div>
  </div>
  <div style="display:flex;justify-content:center;gap:28px;margin-top:24px">
    {img("previous track arrow", 56, 56, "icon")}
    {img("play button triangle", 72, 72, "icon")}
    {img("next track arrow", 56, 56, "icon")}
  </div>
  <div data-type="page indicator" style="display:flex;justify-content:center;gap:8px;margin-top:28px">
    <div style="width:10px;height:10px;background-color:#2255cc"></div>
    <div style="width:10px;height:10px;background-color:#cccccc"></div>
    <div style="width:10px;height:10px;background-color:#cccccc"></div>
  </div>
</div>"""


def ui_form(title: str, fields: list[str], submit: str) -> str:
    rows = "\n".join(
        f'  <p data-type="text">{label}</p>\n'
        f'  <input data-type="input field" style="width:100%;height:46px;'
        f'margin-bottom:14px">'
        for label in fields)
    return f"""
<div style="padding:20px">
  <h2 data-type="text">{title}</h2>
{rows}
  <div style="display:flex;gap:10px;margin-top:8px">
    <div data-type="checked view" style="width:26px;height:26px;background-color:#2255cc"></div>
    <p data-type="text" style="font-size:14px">I agree to the terms</p>
  </div>
  <button data-type="text button" style="width:100%;height:52px;margin-top:20px;background-color:#118855;color:#ffffff">{submit}</button>
</div>"""


def ui_profile(name: str, handle: str, avatar_alt: str, bio: str,
               stats: list[tuple[str, str]]) -> str:
    cells = "\n".join(
        f'    <div style="padding:10px"><p data-type="text">{num}</p>'
        f'<p data-type="text" style="font-size:13px;color:#777777">{label}</p></div>'
        for num, label in stats)
    return f"""
<div style="padding:24px">
  <div style="display:flex;gap:16px">
    {img(avatar_alt, 96, 96)}
    <div>
      <h2 data-type="text">{name}</h2>
      <p data-type="text" style="color:#666666">{handle}</p>
    </div>
  </div>
  <div style="display:flex;justify-content:space-between;margin-top:20px">
{cells}
  </div>
  <p data-type="text" style="margin-top:16px">{bio}</p>
  <button data-type="text button" style="width:100%;height:48px;margin-top:20px">Edit profile</button>
</div>"""


def ui_tutorial(step_title: str, step_text: str, art_alt: str) -> str:
    return f"""
<div style="padding:24px">
  {img(art_alt, 420, 320)}
  <h2 data-type="text" style="margin-top:24px">{step_title}</h2>
  <p data-type="text" style="margin-top:10px;color:#555555">{step_text}</p>
  <div data-type="page indicator" style="display:flex;gap:8px;margin-top:24px">
    <div style="width:10px;height:10px;background-color:#2255cc"></div>
    <div style="width:10px;height:10px;background-color:#cccccc"></div>
    <div style="width:10px;height:10px;background-color:#cccccc"></div>
    <div style="width:10px;height:10px;background-color:#cccccc"></div>
  </div>
  <button data-type="text button" style="width:100%;height:52px;margin-top:28px;background-color:#2255cc;color:#ffffff">Next</button>
  <button data-type="text button" style="width:100%;height:44px;margin-top:8px">Skip</button>
</div>"""


def ui_gallery(title: str, alts: list[str]) -> str:
    rows = []
    for i in range(0, len(alts), 2):
        pair = alts[i : i + 2]
        cells = "".join(f"{img(alt, 290, 220)}" for alt in pair)
        rows.append(f'  <div style="display:flex;gap:12px;margin-bottom:12px">'
                    f"{cells}</div>")
    grid = "\n".join(rows)
    return f"""
<div style="padding:12px">
  <h2 data-type="text">{title}</h2>
{grid}
</div>"""


def ui_popup(base_title: str, popup_title: str, popup_text: str) -> str:
    return f"""
<div style="padding:16px">
  <h2 data-type="text">{base_title}</h2>
  <p data-type="text" style="color:#777777">Recent activity appears here</p>
</div>
<div data-type="popup window" style="position:absolute;left:64px;top:380px;width:500px;height:300px;background-color:#ffffff;padding:20px">
  <h2 data-type="text">{popup_title}</h2>
  <p data-type="text" style="margin-top:10px">{popup_text}</p>
  <div style="display:flex;gap:12px;margin-top:24px">
    <button data-type="text button" style="width:200px;height:48px;background-color:#2255cc;color:#ffffff">Allow</button>
    <button data-type="text button" style="width:200px;height:48px">Not now</button>
  </div>
</div>"""


# ------------------------------------------------------------- slide templates


def slide_title(topic_title: str, subtitle: str, art_alt: str,
                footer: str) -> str:
    return f"""
<div style="padding:70px">
  <h1 data-type="title" style="font-size:54px">{topic_title}</h1>
  <div data-type="text box" style="font-size:32px;color:#444444;margin-top:18px">{subtitle}</div>
  <div style="margin-top:40px">{img(art_alt, 360, 270)}</div>
</div>
<div data-type="footer" style="position:absolute;left:0px;bottom:0px;width:1210px;height:44px;background-color:#eeeeee;padding-left:70px">
  <p style="font-size:18px;color:#666666">{footer}</p>
</div>"""


def slide_bullets(title: str, bullets: list[str], art_alt: str,
                  header: str, body_px: int = 32) -> str:
    items = "\n".join(
        f'    <li data-type="text box" style="font-size:{body_px}px;margin-bottom:14px">'
        f"{b}</li>" for b in bullets)
    return f"""
<div data-type="header" style="height:54px;background-color:#223355;padding-left:60px">
  <p style="font-size:22px;color:#ffffff">{header}</p>
</div>
<div style="display:flex;gap:50px;padding:50px">
  <div style="width:640px">
    <h1 data-type="title" style="font-size:40px">{title}</h1>
    <ul style="margin-top:26px">
{items}
    </ul>
  </div>
  <div>{img(art_alt, 420, 320)}</div>
</div>"""


def slide_chart(title: str, chart_alt: str, caption: str) -> str:
    return f"""
<div style="padding:60px">
  <h1 data-type="title" style="font-size:40px">{title}</h1>
  <div style="display:flex;gap:40px;margin-top:30px">
    {img(chart_alt, 640, 400, "chart")}
    <div data-type="text box" style="width:420px;font-size:32px">{caption}</div>
  </div>
</div>"""


def slide_diagram(title: str, diagram_alt: str, note: str,
                  kind: str = "diagram") -> str:
    return f"""
<div style="padding:60px">
  <h1 data-type="title" style="font-size:40px">{title}</h1>
  <div style="margin-top:30px">{img(diagram_alt, 760, 380, kind)}</div>
  <div data-type="text box" style="font-size:32px;margin-top:24px">{note}</div>
</div>"""


def slide_table(title: str, header_cells: list[str],
                rows: list[list[str]], note: str) -> str:
    head_cells = "".join(
        f'<div style="width:280px;padding:12px;background-color:#223355">'
        f'<p style="font-size:24px;color:#ffffff">{c}</p></div>'
        for c in header_cells)
    body_rows = "\n".join(
        '    <div style="display:flex">' + "".join(
            f'<div style="width:280px;padding:12px;background-color:#f2f2f2">'
            f'<p style="font-size:24px">{c}</p></div>' for c in row) + "</div>"
        for row in rows)
    return f"""
<div style="padding:60px">
  <h1 data-type="title" style="font-size:40px">{title}</h1>
  <div data-type="table" style="margin-top:30px">
    <div style="display:flex">{head_cells}</div>
{body_rows}
  </div>
  <div data-type="text box" style="font-size:32px;margin-top:24px">{note}</div>
</div>"""


def slide_section(number: str, section_title: str, footer: str) -> str:
    return f"""
<div style="padding-top:240px">
  <div style="display:flex;justify-content:center">
    <div data-type="text box" style="font-size:32px;color:#888888">{number}</div>
  </div>
  <div style="display:flex;justify-content:center;margin-top:20px">
    <h1 data-type="title" style="font-size:60px">{section_title}</h1>
  </div>
</div>
<div data-type="footer" style="position:absolute;left:0px;bottom:0px;width:1210px;height:44px;background-color:#eeeeee;padding-left:70px">
  <p style="font-size:18px;color:#666666">{footer}</p>
</div>"""


def slide_instructor(title: str, bullets: list[str], speaker_alt: str,
                     header: str) -> str:
    items = "\n".join(
        f'    <li data-type="text box" style="font-size:32px;margin-bottom:14px">'
        f"{b}</li>" for b in bullets)
    return f"""
<div data-type="header" style="height:54px;background-color:#223355;padding-left:60px">
  <p style="font-size:22px;color:#ffffff">{header}</p>
</div>
<div style="padding:50px">
  <h1 data-type="title" style="font-size:40px">{title}</h1>
  <ul style="margin-top:26px;width:760px">
{items}
  </ul>
</div>
<div data-type="instructor" style="position:absolute;right:30px;bottom:60px">{img(speaker_alt, 240, 300)}</div>"""


# -------------------------------------------------------------------- content

UI_FIXTURES: list[tuple[str, str, str]] = [
    # (screen_class, description, body) in schedule order:
    # list, login, settings, menu, media player, form, profile, tutorial,
    # gallery, then repeat, then list, login.
    ("list",
     "A podcasts list screen titled Saved episodes with rows for Morning "
     "Brief, Deep Field, and Slow Burn, each row showing a small show icon "
     "beside the episode text. A dark upper taskbar sits above the list.",
     ui_list("Saved episodes",
             [("Morning Brief", "microphone show icon"),
              ("Deep Field", "telescope show icon"),
              ("Slow Burn", "flame show icon")])),
    ("login",
     "A login screen for BrewNet titled with the heading BrewNet and the "
     "tagline Your coffee club. Below a coffee cup logo there are Email "
     "address and Password fields, a blue Sign in button, a Create account "
     "button, and a small Forgot password link.",
     ui_login("BrewNet", "Your coffee club", "coffee cup logo")),
    ("settings",
     "A settings screen titled Notifications with switch rows for Push "
     "alerts, Email digest, Weekly summary, and Sound effects, plus a note "
     "that Changes are saved automatically.",
     ui_settings("Notifications",
                 ["Push alerts", "Email digest", "Weekly summary",
                  "Sound effects"])),
    ("menu",
     "A navigation menu screen for TrailMate with an open sliding menu over "
     "a dimmed backdrop. Menu entries read Home, Routes, Offline maps, and "
     "Help center, each with a small icon.",
     ui_menu("TrailMate",
             [("Home", "house icon"), ("Routes", "winding path icon"),
              ("Offline maps", "download icon"),
              ("Help center", "question mark icon")])),
    ("media player",
     "A media player screen showing large album art for Night Drive by the "
     "artist Neon Harbor, a progress bar, previous and next track arrows "
     "around a central play button, and a three dot page indicator below "
     "the controls.",
     ui_media_player("Night Drive", "Neon Harbor",
                     "album art with neon city skyline")),
    ("form",
     "A delivery form screen titled Shipping details with fields for Full "
     "name, Street address, City, and Postal code, an I agree to the terms "
     "checkbox, and a green Place order button at the bottom.",
     ui_form("Shipping details",
             ["Full name", "Street address", "City", "Postal code"],
             "Place order")),
    ("profile",
     "A profile screen for Maya Chen with the handle at mayachen, a round "
     "avatar photo, counters for Posts, Followers, and Following, a short "
     "bio about hiking and film photography, and an Edit profile button.",
     ui_profile("Maya Chen", "@mayachen", "round avatar photo of a hiker",
                "Hiking the coast and shooting film photography.",
                [("128", "Posts"), ("5,204", "Followers"),
                 ("312", "Following")])),
    ("tutorial",
     "A tutorial screen headed Track your sleep with an illustration of a "
     "watch over a moonlit bed, body text explaining that the band records "
     "sleep stages automatically, a four dot page indicator, a blue Next "
     "button and a Skip button.",
     ui_tutorial("Track your sleep",
                 "Wear the band at night and it records sleep stages "
                 "automatically.",
                 "illustration of a watch over a moonlit bed")),
    ("gallery",
     "A gallery screen titled Spring collection with a two column grid of "
     "six photos including a linen jacket, a straw hat, canvas sneakers, a "
     "silk scarf, a denim shirt, and a leather tote bag.",
     ui_gallery("Spring collection",
                ["linen jacket on a hanger", "wide brim straw hat",
                 "white canvas sneakers", "patterned silk scarf",
                 "faded denim shirt", "brown leather tote bag"])),
    ("list",
     "A tasks list screen titled Today with rows for Water the plants, "
     "Review pull requests, and Call the dentist, each row carrying a "
     "checkbox style icon, under a dark upper taskbar.",
     ui_list("Today",
             [("Water the plants", "leaf icon"),
              ("Review pull requests", "branch icon"),
              ("Call the dentist", "phone icon")])),
    ("login",
     "A login screen for Atlas Bank titled Atlas with the tagline Banking "
     "without borders, a compass logo, Email address and Password fields, "
     "a Sign in button and a Create account option.",
     ui_login("Atlas", "Banking without borders", "compass rose logo")),
    ("settings",
     "A privacy settings screen titled Privacy controls with switches for "
     "Location history, Ad personalization, Crash reports, and Usage "
     "statistics.",
     ui_settings("Privacy controls",
                 ["Location history", "Ad personalization", "Crash reports",
                  "Usage statistics"])),
    ("menu",
     "A menu screen for the Pantry cooking app with a sliding drawer listing "
     "Recipes, Meal planner, Grocery list, and Account, each entry beside a "
     "small line icon.",
     ui_menu("Pantry",
             [("Recipes", "open book icon"), ("Meal planner", "calendar icon"),
              ("Grocery list", "basket icon"), ("Account", "person icon")])),
    ("media player",
     "A media player screen for the audiobook The Silent Orchard with cover "
     "art of an orchard at dusk, the narrator name Ada Brooks, a progress "
     "bar, previous and next controls around a play button, and dot page "
     "indicators.",
     ui_media_player("The Silent Orchard", "Ada Brooks",
                     "book cover art of an orchard at dusk")),
    ("form",
     "A feedback form screen titled Tell us what happened with fields for "
     "Order number, Subject, and Email, an agreement checkbox, and a Submit "
     "report button.",
     ui_form("Tell us what happened", ["Order number", "Subject", "Email"],
             "Submit report")),
    ("profile",
     "A profile screen for Diego Alvarez with handle at dalvarez, an avatar "
     "photo with a bicycle, stats for Rides, Kudos, and Friends, a bio "
     "about weekend cycling routes, and an Edit profile button.",
     ui_profile("Diego Alvarez", "@dalvarez",
                "avatar photo of a cyclist with a road bicycle",
                "Mapping weekend cycling routes around the valley.",
                [("86", "Rides"), ("1,432", "Kudos"), ("207", "Friends")])),
    ("tutorial",
     "A tutorial screen titled Scan to pay showing an illustration of a "
     "phone scanning a square code at a counter, text saying point the "
     "camera at the code to pay instantly, page indicator dots, a Next "
     "button and a Skip button.",
     ui_tutorial("Scan to pay",
                 "Point the camera at the code and the payment happens "
                 "instantly.",
                 "illustration of a phone scanning a square code")),
    ("gallery",
     "A gallery screen titled Weekend in Kyoto with six travel photos: a "
     "red shrine gate, a stone garden, a bamboo grove path, a tea house "
     "interior, a night market street, and a river bridge at dusk.",
     ui_gallery("Weekend in Kyoto",
                ["red shrine gate", "raked stone garden",
                 "bamboo grove path", "tea house interior",
                 "night market street", "river bridge at dusk"])),
    ("list",
     "An inbox list screen titled Inbox with message rows from Harbor "
     "Dental, City Library, and Runway Airlines, each row with a sender "
     "icon, beneath the upper taskbar.",
     ui_list("Inbox",
             [("Harbor Dental", "tooth icon"),
              ("City Library", "book stack icon"),
              ("Runway Airlines", "airplane icon")])),
    ("login",
     "An essay about the history of lighthouse keepers on remote Atlantic "
     "islands, their seasonal supply boats, whale oil lamps, and the slow "
     "adoption of automated beacons during the twentieth century.",
     ui_popup("Notifications center", "Turn on notifications",
              "Get alerts when a delivery arrives or a friend shares a "
              "photo.")),
]

SLIDE_FIXTURES: list[tuple[str, str, str]] = [
    # schedule order: psychology, communication, law, public health,
    # computer science, language learning, repeating; 18->psychology,
    # 19->communication.
    ("psychology",
     "A title slide for a psychology lecture called Memory and Forgetting "
     "with the subtitle How the brain encodes, stores, and retrieves, an "
     "illustration of a human brain with highlighted hippocampus, and a "
     "course footer reading PSY 201 Cognitive Psychology.",
     slide_title("Memory and Forgetting",
                 "How the brain encodes, stores, and retrieves",
                 "illustration of a human brain with highlighted hippocampus",
                 "PSY 201 Cognitive Psychology")),
    ("communication",
     "A communication lecture slide titled Active Listening with bullet "
     "points about paraphrasing the speaker, asking open questions, and "
     "withholding judgment, beside a photo of two colleagues talking, under "
     "a header reading COMM 110 Interpersonal Skills.",
     slide_bullets("Active Listening",
                   ["Paraphrase the speaker before responding",
                    "Ask open questions to invite detail",
                    "Withhold judgment until the story is complete"],
                   "photo of two colleagues talking at a table",
                   "COMM 110 Interpersonal Skills")),
    ("law",
     "A law lecture slide titled Elements of a Contract with a table of "
     "Element and Meaning rows covering Offer, Acceptance, and "
     "Consideration, plus a note that all three elements must be present "
     "to bind.",
     slide_table("Elements of a Contract",
                 ["Element", "Meaning"],
                 [["Offer", "A definite promise to be bound"],
                  ["Acceptance", "Unqualified agreement to the offer"],
                  ["Consideration", "Something of value exchanged"]],
                 "All three elements must be present to bind.")),
    ("public health",
     "A public health slide titled Vaccination Coverage by Region with a "
     "bar chart of regional coverage rates and a caption noting that "
     "coverage above ninety percent sustains herd immunity.",
     slide_chart("Vaccination Coverage by Region",
                 "bar chart of vaccination coverage rates by region",
                 "Coverage above ninety percent sustains herd immunity.")),
    ("computer science",
     "A computer science slide titled How Merge Sort Works with a diagram "
     "of an array splitting into halves and merging back sorted, and a note "
     "that the running time grows as n log n.",
     slide_diagram("How Merge Sort Works",
                   "diagram of an array splitting into halves and merging "
                   "back sorted",
                   "Running time grows as n log n.")),
    ("language learning",
     "A language learning slide titled Spanish Past Tenses with bullets "
     "contrasting the preterite for completed actions and the imperfect "
     "for ongoing background, next to a photo of a Madrid street cafe, "
     "under a header reading SPAN 102.",
     slide_bullets("Spanish Past Tenses",
                   ["Preterite reports completed actions",
                    "Imperfect paints ongoing background",
                    "Many verbs shift meaning between the two"],
                   "photo of a Madrid street cafe",
                   "SPAN 102 Beginning Spanish")),
    ("psychology",
     "A psychology slide titled The Forgetting Curve with a line chart "
     "showing retention falling sharply over days without review and a "
     "caption that spaced practice flattens the curve.",
     slide_chart("The Forgetting Curve",
                 "line chart of retention falling over days without review",
                 "Spaced practice flattens the curve.")),
    ("communication",
     "A section divider slide for a communication course reading Part Two "
     "Nonverbal Signals in large type with a footer reading COMM 110 "
     "Interpersonal Skills.",
     slide_section("Part Two", "Nonverbal Signals",
                   "COMM 110 Interpersonal Skills")),
    ("law",
     "A law lecture slide titled Court Hierarchy Explained with a schematic "
     "showing appeals flowing from trial courts through appellate courts to "
     "the supreme court, and a note that precedent binds the courts below.",
     slide_diagram("Court Hierarchy Explained",
                   "schematic of appeals flowing from trial courts to the "
                   "supreme court",
                   "Precedent binds the courts below.",
                   kind="schematic diagram")),
    ("public health",
     "A public health title slide called Clean Water Access with the "
     "subtitle Tracking progress toward universal coverage, an image of a "
     "community well pump, and a footer reading PH 330 Global Health.",
     slide_title("Clean Water Access",
                 "Tracking progress toward universal coverage",
                 "photo of a community well pump",
                 "PH 330 Global Health")),
    ("computer science",
     "A computer science lecture slide by an instructor titled What Is a "
     "Hash Table with bullets about constant time lookups, collisions, and "
     "load factor, plus a webcam frame of the instructor in the corner and "
     "a header reading CS 201 Data Structures.",
     slide_instructor("What Is a Hash Table",
                      ["Keys map to buckets for constant time lookups",
                       "Collisions are resolved by chaining or probing",
                       "Resize when the load factor passes a threshold"],
                      "webcam frame of the instructor speaking",
                      "CS 201 Data Structures")),
    ("language learning",
     "A language learning slide titled Common French False Friends with a "
     "table pairing French words and actual meanings for librairie, "
     "journee, and rester, and a warning note that lookalike words mislead "
     "beginners.",
     slide_table("Common French False Friends",
                 ["French word", "Actual meaning"],
                 [["librairie", "bookshop, not library"],
                  ["journee", "daytime, not journey"],
                  ["rester", "to stay, not to rest"]],
                 "Lookalike words mislead beginners.")),
    ("psychology",
     "A psychology slide titled Classical Conditioning Basics with bullets "
     "about pairing a neutral stimulus with food, the bell alone drawing "
     "salivation, and extinction after unpaired trials, beside a drawing of "
     "Pavlov's dog experiment, under a PSY 201 header.",
     slide_bullets("Classical Conditioning Basics",
                   ["A neutral stimulus is paired with food",
                    "Soon the bell alone draws salivation",
                    "Responses fade after unpaired trials"],
                   "drawing of Pavlov's dog experiment apparatus",
                   "PSY 201 Cognitive Psychology", body_px=26)),
    ("communication",
     "A communication slide titled Audience Attention Over Time with a "
     "line chart of attention dipping mid presentation and a caption "
     "advising a change of pace every ten minutes.",
     slide_chart("Audience Attention Over Time",
                 "line chart of audience attention dipping mid presentation",
                 "Change the pace every ten minutes.")),
    ("law",
     "A law section divider slide reading Unit Three Property Law in large "
     "centered type with a footer reading LAW 150 Foundations.",
     slide_section("Unit Three", "Property Law", "LAW 150 Foundations")),
    ("public health",
     "A public health slide titled Chain of Infection with a diagram "
     "linking agent, reservoir, exit, transmission, entry, and host, and a "
     "note that breaking any link stops the spread.",
     slide_diagram("Chain of Infection",
                   "diagram linking agent, reservoir, exit, transmission, "
                   "entry, and host",
                   "Breaking any link stops the spread.")),
    ("computer science",
     "A computer science title slide called Introduction to Recursion with "
     "the subtitle Functions that call themselves, an image of nested "
     "matryoshka dolls, and a footer reading CS 101 Programming Basics.",
     slide_title("Introduction to Recursion",
                 "Functions that call themselves",
                 "photo of nested matryoshka dolls",
                 "CS 101 Programming Basics")),
    ("language learning",
     "A language learning slide titled Japanese Counting Words with "
     "bullets explaining that counters change with object shape, flat "
     "objects use mai, and long objects use hon, beside a photo of "
     "classroom flashcards.",
     slide_bullets("Japanese Counting Words",
                   ["Counters change with the object's shape",
                    "Flat objects are counted with mai",
                    "Long thin objects are counted with hon"],
                   "photo of classroom flashcards on a desk",
                   "JPN 101 Elementary Japanese")),
    ("psychology",
     "A psychology slide titled Stages of Sleep with a table mapping stage "
     "names to brain wave patterns across light sleep, deep sleep, and REM, "
     "plus a note that a full cycle runs about ninety minutes.",
     slide_table("Stages of Sleep",
                 ["Stage", "Brain waves"],
                 [["Light sleep", "Theta waves with spindles"],
                  ["Deep sleep", "Slow delta waves"],
                  ["REM", "Fast mixed waves with dreams"]],
                 "A full cycle runs about ninety minutes.")),
    ("communication",
     "Release notes for a database engine describing vacuum scheduling "
     "improvements, write ahead log compression, replica failover timing, "
     "and assorted query planner bug fixes shipped in the spring release.",
     slide_bullets("Team Meeting Norms",
                   ["Start on time and end five minutes early",
                    "One conversation at a time",
                    "Decisions are written down before we leave"],
                   "photo of a team around a whiteboard",
                   "COMM 110 Interpersonal Skills")),
]


DOCTOR = {
    "ui-0003": lambda t: t.replace(
        "width:628px;height:1118px;background-image:url(backdrop.png)",
        "width:628px;height:1118px;background-color:#0a0a0a;"
        "background-image:url(backdrop.png)", 1),
    "slide-0003": lambda t: t.replace(' height="400" data-type="chart"',
                                      ' data-type="chart"', 1),
}


def main() -> None:
    (FIXTURES / "markup").mkdir(parents=True, exist_ok=True)
    rows = []
    for domain, fixtures, make in (
        (Domain.UI, UI_FIXTURES, ui_doc),
        (Domain.SLIDE, SLIDE_FIXTURES, slide_doc),
    ):
        schedule = _schedule(domain, len(fixtures), None)
        for i, (screen, description, body) in enumerate(fixtures):
            expected = schedule[i].name
            assert screen == expected, (
                f"{domain.value}[{i}] targets {screen!r}, schedule wants "
                f"{expected!r}")
            doc_id = f"{domain.value}-{i:04d}"
            text = make(screen, body)
            if doc_id in DOCTOR:
                text = DOCTOR[doc_id](text)
            (FIXTURES / "markup" / f"{doc_id}.html").write_text(
                text, encoding="utf-8")
            rows.append({"id": doc_id, "domain": domain.value,
                         "screen_class": screen, "text": description})
    lines = [json.dumps(r, ensure_ascii=False, sort_keys=True) for r in rows]
    (FIXTURES / "descriptions.jsonl").write_text("\n".join(lines) + "\n",
                                                 encoding="utf-8")
    print(f"wrote {len(rows)} fixtures under {FIXTURES}")


if __name__ == "__main__":
    main()
