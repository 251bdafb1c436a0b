"""Prompt templates for the two remote model roles.

The wording is part of the wire contract: request bodies built here are
compared byte-for-byte against golden files in the test suite.  Do not edit
casually.
"""

from __future__ import annotations

PREPROCESS_SYSTEM_PROMPT = (
    "You are a helpful AI assistant. Instructions:\n"
    "a. Carefully read the topic and the description.\n"
    "b. Provide a list of all subtopics contained within the description.\n"
    "c. Do not include any explanation or additional text in the response."
)

PREPROCESS_USER_TEMPLATE = "#topic: {topic}, #description: {description}"

CLASSIFY_SYSTEM_PROMPT = (
    "You are a helpful AI assistant.\n"
    "Instructions:\n"
    "a. Carefully read the knowledge statement.\n"
    "b. Choose one or more of the following (0, 1, 2, 3, 4, 5, 6, 7, 8).\n"
    "c. Do NOT include any explanation or additional text in the response."
)

_CLASSIFY_OPTIONS = (
    '{"0": "miscellaneous (this includes Computer Science, Business and Law, '
    "Communication and Networking, Information Technology, Cyberspace Practice, "
    'Pedagogy, and Intelligence)",\n'
    '           "1": "data security",\n'
    '           "2": "software security",\n'
    '           "3": "component security",\n'
    '           "4": "connection security",\n'
    '           "5": "system security",\n'
    '           "6": "human security",\n'
    '           "7": "organizational security",\n'
    '           "8": "societal security"}'
)

CLASSIFY_USER_TEMPLATE = (
    "#Question: Classify the following statement {knowledge} into one or "
    "multiple of the following knowledge areas:\n"
    "Options: " + _CLASSIFY_OPTIONS
)


def preprocess_user_message(topic: str, description: str) -> str:
    return PREPROCESS_USER_TEMPLATE.replace("{topic}", topic).replace("{description}", description)


def classify_user_message(knowledge: str) -> str:
    # plain replacement: the options block contains literal braces
    return CLASSIFY_USER_TEMPLATE.replace("{knowledge}", knowledge)
