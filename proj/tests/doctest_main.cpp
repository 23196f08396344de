/*
 * doctest_main.cpp - shared test runner entry point.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
