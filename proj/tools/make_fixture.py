#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The qamine Authors
"""Generates fixtures/bundled: a 500-question dump excerpt and a small forum archive.

The output is committed; rerun only when changing the generator:
    python3 tools/make_fixture.py fixtures/bundled
"""

import argparse
import html
import math
import random
from collections import Counter
from datetime import datetime, timedelta
from pathlib import Path

SEED = 20170601
DUMP_QUESTIONS = 500

# theme -> (extra tags, title fragments)
THEMES = {
    "list": (["listview"], ["ListView binding", "ListView items not refreshing", "grouped ListView header",
                             "ListView selected item", "ObservableCollection in ListView", "ListView cell height"]),
    "layout": (["xaml"], ["StackLayout spacing", "Grid layout columns", "AbsoluteLayout position",
                          "RelativeLayout constraints", "layout margins on iOS", "ScrollView inside StackLayout"]),
    "navigation": (["uinavigationcontroller"], ["PushAsync navigation", "NavigationPage back button",
                                                "modal page navigation", "navigation bar color",
                                                "ViewController transition", "TabbedPage navigation"]),
    "web": (["web-services"], ["consume REST web service", "HttpClient timeout", "JSON deserialization",
                               "SOAP web service call", "REST API authentication", "HttpClient POST request"]),
    "database": (["sqlite"], ["SQLite database path", "SQLite async connection", "database migration",
                              "SQLite table query", "store data locally", "Realm database"]),
    "device": (["android-emulator"], ["emulator not starting", "deploy to device fails", "iOS simulator crash",
                                      "debugging on physical device", "emulator network access",
                                      "device not detected"]),
    "mvvm": (["mvvmcross", "mvvm"], ["MvvmCross ViewModel binding", "MVVM command binding", "ViewModel navigation",
                                     "INotifyPropertyChanged ViewModel", "MvvmCross plugin", "MVVM Light messenger"]),
    "pcl": (["portable-class-library", "nuget"], ["portable class library reference", "NuGet package restore",
                                                  "PCL profile compatibility", "shared project vs PCL",
                                                  "NuGet package install fails", "PCL assembly missing"]),
    "ide": (["xamarin-studio", "monodevelop"], ["Xamarin Studio build error", "MonoDevelop debugger",
                                                "Xamarin Studio crashes", "MonoDevelop project settings",
                                                "IDE license activation", "Xamarin Studio designer"]),
    "notifications": (["push-notification"], ["push notifications iOS", "local notification Android",
                                               "Firebase notifications", "notification click action",
                                               "APNS device token", "GCM push messages"]),
    "media": (["camera"], ["camera capture image", "pick image from gallery", "resize images",
                           "video playback", "audio recording", "image caching"]),
    "location": (["google-maps"], ["Google Maps marker", "current location GPS", "map pins custom",
                                   "geolocation permission", "maps polyline route", "location updates background"]),
}

PLATFORM_TAGS = ["xamarin.forms", "xamarin.ios", "xamarin.android", "xamarin", "xamarin.mac"]
PLATFORM_WORDS = {"xamarin.forms": "Xamarin.Forms", "xamarin.ios": "Xamarin.iOS", "xamarin.android": "Xamarin.Android",
                  "xamarin": "Xamarin", "xamarin.mac": "Xamarin.Mac"}
SUFFIXES = ["", "", "", " not working", " issue", " problem", " on Android", " on iOS", " in shared code",
            " after update", " with custom renderer", " example"]
PREFIXES = ["", "", "", "How to ", "How do I ", "Best way for ", "Help with "]

OFF_DOMAIN = [
    (["python", "pandas"], ["Pandas groupby mean", "DataFrame merge columns", "read CSV with pandas"]),
    (["java", "spring"], ["Spring Boot configuration", "Java stream filter", "Hibernate lazy loading"]),
    (["javascript", "reactjs"], ["React state update", "JavaScript promise chain", "React router redirect"]),
    (["c#", "asp.net"], ["ASP.NET MVC routing", "Entity Framework migration", "C# async await deadlock"]),
    (["c#", "wpf"], ["WPF DataGrid binding", "WPF window resize", "WPF command parameter"]),
    (["c#", "linq"], ["LINQ group by", "LINQ left join", "LINQ to XML query"]),
    (["c#", "unity3d"], ["Unity coroutine wait", "Unity prefab instantiate", "Unity raycast hit"]),
    (["android", "java"], ["RecyclerView adapter", "Android fragment lifecycle", "Gradle build failed"]),
]

FORUMS = [
    ("1", "Xamarin.Forms", "Xamarin Platform", "forms"),
    ("2", "Xamarin.Android", "Xamarin Platform", "android"),
    ("3", "Xamarin.iOS", "Xamarin Platform", "ios"),
    ("4", "Visual Studio", "Tools", "ide"),
    ("5", "Libraries, Components, and Plugins", "Tools", "pcl"),
    ("6", "General", "Community", "general"),
    ("7", "Off Topic", "Community", "offtopic"),
]
TECH_FORUMS = ["Xamarin.Forms", "Xamarin.Android", "Xamarin.iOS", "Visual Studio",
               "Libraries, Components, and Plugins"]
FORUM_THEMES = {
    "forms": ["list", "layout", "navigation", "mvvm"],
    "android": ["device", "notifications", "media", "location"],
    "ios": ["navigation", "notifications", "device", "layout"],
    "ide": ["ide", "device", "pcl"],
    "pcl": ["pcl", "database", "web", "mvvm"],
    "general": ["ide", "pcl"],
}
OFF_TOPIC_TITLES = ["Introduce yourself", "Xamarin Evolve meetup", "Favorite podcasts", "Job posting Seattle",
                    "Happy new year", "Which laptop for development"]
USERS = [("u1", "ana.dev", ["Member"]), ("u2", "bruno_m", ["Member"]), ("u3", "XamCoach", ["Xamurai"]),
         ("u4", "team.jo", ["Xamarin Team"]), ("u5", "kay", ["Member"]), ("u6", "lee.ios", ["Member"]),
         ("u7", "PlatformPro", ["Xamurai", "Insider"]), ("u8", "newbie42", [])]


def make_title(rng, theme, platform_word=None):
    fragment = rng.choice(THEMES[theme][1])
    title = rng.choice(PREFIXES) + fragment + rng.choice(SUFFIXES)
    if platform_word and rng.random() < 0.6:
        title = f"{platform_word} {title[0].lower()}{title[1:]}" if rng.random() < 0.5 else f"{title} in {platform_word}"
    return title[0].upper() + title[1:]


def views_and_score(rng):
    views = int(math.exp(rng.gauss(7.5, 1.6)))
    score = max(0, int(rng.gauss(math.log10(views + 1) * 4 - 10, 6)))
    return views, score


def xml_attr(value):
    return html.escape(str(value), quote=True)


def tag_string(tags):
    return "".join(f"<{t}>" for t in tags)


def build_dump(rng):
    questions = []
    start = datetime(2012, 3, 1)
    ids = sorted(rng.sample(range(9_000_000, 44_000_000), DUMP_QUESTIONS - 1))

    kinds = (["xamarin"] * 385) + (["related"] * 25) + (["keyword"] * 14) + (["off"] * 75)
    rng.shuffle(kinds)
    for qid, kind in zip(ids, kinds):
        date = start + timedelta(minutes=rng.randrange(0, 5 * 365 * 24 * 60))
        theme = rng.choice(list(THEMES))
        if kind == "xamarin":
            platform = rng.choice(PLATFORM_TAGS[:4] * 3 + PLATFORM_TAGS[4:])
            tags = [platform] + rng.sample(THEMES[theme][0], k=min(len(THEMES[theme][0]), rng.randint(0, 2)))
            if platform != "xamarin" and rng.random() < 0.5:
                tags.insert(0, "xamarin")
            if rng.random() < 0.02:
                tags.append("c#")
            title = make_title(rng, theme, PLATFORM_WORDS[platform])
        elif kind == "related":
            theme = rng.choice(["mvvm", "pcl", "ide"])
            tags = THEMES[theme][0][:1] + (["c#"] if rng.random() < 0.1 else [])
            title = make_title(rng, theme)
        elif kind == "keyword":
            tags = rng.choice([["c#", "android"], ["c#", "ios"], ["android", "datetime"], ["c#", ".net"]])
            title = make_title(rng, theme, rng.choice(["Xamarin", "Xamarin.Forms", "Xamarin Android"]))
        else:
            tags, titles = rng.choice(OFF_DOMAIN)
            title = rng.choice(titles) + rng.choice(SUFFIXES)
        views, score = views_and_score(rng)
        questions.append(dict(id=qid, title=title, tags=list(dict.fromkeys(tags)), date=date, views=views,
                              score=score))

    questions.append(dict(id=29405420, title="Xamarin Android Save sms", tags=["c#", "android", "datetime"],
                          date=datetime(2015, 4, 2, 8, 12, 30), views=812, score=1))
    questions.sort(key=lambda q: q["id"])

    # A handful of posts pinned right at the relevance thresholds.
    pinned = rng.sample([q for q in questions if q["id"] != 29405420], 6)
    for q, (v, s) in zip(pinned, [(10000, 10), (10000, 9), (9999, 10), (25000, 40), (150000, 120), (12000, 10)]):
        q["views"], q["score"] = v, s

    rows = []
    next_id = 50_000_000
    tag_counts = Counter()
    for q in questions:
        tag_counts.update(q["tags"])
        answers = []
        for _ in range(rng.choice([0, 0, 1, 1, 1, 2, 2, 3, 4])):
            next_id += rng.randint(1, 40)
            answers.append(dict(id=next_id, date=q["date"] + timedelta(minutes=rng.randint(5, 20000)),
                                score=max(0, int(rng.gauss(2, 3)))))
        accepted = rng.choice(answers)["id"] if answers and rng.random() < 0.55 else None
        q_attrs = [("Id", q["id"]), ("PostTypeId", 1)]
        if accepted:
            q_attrs.append(("AcceptedAnswerId", accepted))
        q_attrs += [("CreationDate", q["date"].strftime("%Y-%m-%dT%H:%M:%S.000")), ("Score", q["score"]),
                    ("ViewCount", q["views"]), ("Body", f"<p>{q['title']}. Any ideas?</p>"),
                    ("OwnerUserId", rng.randint(1, 900000)), ("Title", q["title"]), ("Tags", tag_string(q["tags"])),
                    ("AnswerCount", len(answers))]
        rows.append(q_attrs)
        for a in answers:
            rows.append([("Id", a["id"]), ("PostTypeId", 2), ("ParentId", q["id"]),
                         ("CreationDate", a["date"].strftime("%Y-%m-%dT%H:%M:%S.000")), ("Score", a["score"]),
                         ("Body", "<p>Try this.</p>"), ("OwnerUserId", rng.randint(1, 900000))])
    # One tag wiki row, which the ingester ignores.
    rows.append([("Id", 60_000_001), ("PostTypeId", 4), ("Body", "<p>Xamarin is a platform.</p>")])

    posts = ['<?xml version="1.0" encoding="utf-8"?>', "<posts>"]
    for attrs in rows:
        posts.append("  <row " + " ".join(f'{k}="{xml_attr(v)}"' for k, v in attrs) + " />")
    posts.append("</posts>")

    tags = ['<?xml version="1.0" encoding="utf-8"?>', "<tags>"]
    for i, (name, count) in enumerate(sorted(tag_counts.items()), start=1):
        tags.append(f'  <row Id="{i}" TagName="{xml_attr(name)}" Count="{count}" />')
    tags.append("</tags>")
    return "\n".join(posts) + "\n", "\n".join(tags) + "\n"


def short_views(n):
    if n >= 1000 and n % 100 == 0:
        return f"{n / 1000:.1f}K".replace(".0K", "K")
    return f"{n:,}"


def author_html(rng, user):
    uid, name, roles = user
    badges = "".join(f'<span class="role">{html.escape(r)}</span>' for r in roles)
    return f'<div class="author" data-user-id="{uid}"><span class="name">{html.escape(name)}</span>{badges}</div>'


def build_forum(rng, out):
    out.mkdir(parents=True, exist_ok=True)
    manifest = ["# id\tname\tparent"] + [f"{fid}\t{name}\t{parent}" for fid, name, parent, _ in FORUMS]
    (out / "forums.tsv").write_text("\n".join(manifest) + "\n")

    thread_id = 1000
    for fid, name, _, key in FORUMS:
        count = 14 if key == "offtopic" else (18 if key == "general" else 34)
        threads = []
        for _ in range(count):
            thread_id += rng.randint(1, 30)
            if key == "offtopic":
                title = rng.choice(OFF_TOPIC_TITLES)
            else:
                title = make_title(rng, rng.choice(FORUM_THEMES[key]))
            views = rng.choice([rng.randint(20, 999), rng.randint(1, 90) * 100, rng.randint(1000, 40000)])
            replies = rng.choice([0, 1, 1, 2, 2, 3, 4, 6])
            threads.append(dict(id=thread_id, title=title, views=views, replies=replies,
                                date=datetime(2014, 1, 1) + timedelta(minutes=rng.randrange(0, 3 * 365 * 24 * 60))))

        per_page = 15
        for page, first in enumerate(range(0, len(threads), per_page), start=1):
            items = []
            for t in threads[first:first + per_page]:
                labels = '<span class="label">Answered</span>' if t["replies"] and rng.random() < 0.4 else ""
                items.append(f'  <li class="thread" data-thread-id="{t["id"]}">'
                             f'<a class="title" href="../threads/{t["id"]}.html">{html.escape(t["title"])}</a> '
                             f'<span class="views">{short_views(t["views"])}</span> '
                             f'<span class="answers">{t["replies"]}</span>{labels}</li>')
            body = "\n".join(items)
            doc = (f"<!DOCTYPE html>\n<html><head><title>{html.escape(name)} - page {page}</title></head>\n<body>\n"
                   f'<nav class="breadcrumbs">Forums &gt; {html.escape(name)}</nav>\n'
                   f'<ul class="forum-index" data-forum-id="{fid}">\n{body}\n</ul>\n</body></html>\n')
            (out / "index").mkdir(exist_ok=True)
            (out / "index" / f"forum-{fid}-page-{page}.html").write_text(doc)

        for i, t in enumerate(threads):
            asker = rng.choice(USERS)
            page_views = ""
            if i % 7 == 0:
                # Crawled later than the index: the count moved on.
                page_views = f'<span class="views">{short_views(t["views"] + rng.randint(1, 50))}</span>'
            accepted = rng.randrange(t["replies"]) if t["replies"] and rng.random() < 0.5 else -1
            comments = []
            for r in range(t["replies"]):
                cid = t["id"] * 100 + r + 1
                when = t["date"] + timedelta(minutes=rng.randint(5, 5000) * (r + 1))
                label = '<span class="label">Accepted Answer</span>' if r == accepted else ""
                comments.append(f'  <div class="comment" data-comment-id="{cid}">'
                                f'<time datetime="{when.strftime("%Y-%m-%dT%H:%M:%SZ")}"></time>'
                                f'{author_html(rng, rng.choice(USERS))}'
                                f'<div class="body"><p>Reply {r + 1}: have you tried the latest stable?</p></div>'
                                f"{label}</div>")
            doc = ("<!DOCTYPE html>\n<html><body>\n"
                   f'<div class="thread-page" data-thread-id="{t["id"]}" data-forum-id="{fid}">\n'
                   f'  <h1 class="title">{html.escape(t["title"])}</h1>{page_views}\n'
                   f'  <div class="post"><time datetime="{t["date"].strftime("%Y-%m-%dT%H:%M:%SZ")}"></time>'
                   f'{author_html(rng, asker)}<div class="body"><p>{html.escape(t["title"])}?</p></div></div>\n'
                   + "\n".join(comments) + "\n</div>\n</body></html>\n")
            (out / "threads").mkdir(exist_ok=True)
            (out / "threads" / f"{t['id']}.html").write_text(doc)

    # A login wall saved by the crawler instead of a thread.
    (out / "threads" / "login-redirect.html").write_text(
        '<html><body><div class="signin">Please sign in to continue</div></body></html>\n')


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out", type=Path)
    args = parser.parse_args()
    rng = random.Random(SEED)

    dump = args.out / "dump"
    dump.mkdir(parents=True, exist_ok=True)
    posts, tags = build_dump(rng)
    (dump / "Posts.xml").write_text(posts)
    (dump / "Tags.xml").write_text(tags)
    build_forum(rng, args.out / "forum")
    (args.out / "technological_forums.txt").write_text("\n".join(TECH_FORUMS) + "\n")


if __name__ == "__main__":
    main()
