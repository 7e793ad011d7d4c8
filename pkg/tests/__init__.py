"""Test suite for the Persona-Switching Chatbot."""

