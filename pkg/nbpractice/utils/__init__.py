# Lexical helpers shared by extraction and scanning
