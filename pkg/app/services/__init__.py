"""
Планировщики, исполнитель, оракул и бенчмарк
"""
