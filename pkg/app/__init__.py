# GRIDSTORE: планирование хранения и выдачи грузов на сетке
